import logging
import argparse

from .. import Config
from ..Config.define import METHOD,BlocksofError
from .fileio import dump_document
from .commands import cmd_check,cmd_assign,cmd_assign_solvents,cmd_reduce,cmd_verify,cmd_ode2ss

methods={"auto":METHOD.Auto,"general":METHOD.General,"scalar-h":METHOD.Scalar_h,
         "scalar-fg":METHOD.Scalar_fg,"scalar-all":METHOD.Scalar_all}

commands={"check":cmd_check,"assign":cmd_assign,"assign-solvents":cmd_assign_solvents,
          "reduce":cmd_reduce,"verify":cmd_verify,"ode2ss":cmd_ode2ss}

def get_parser():
    common=argparse.ArgumentParser(add_help=False)
    common.add_argument("--method",
                        type=str,
                        default="auto",
                        choices=list(methods.keys()),
                        help="gain synthesis path, available options: auto, general, scalar-h, scalar-fg, scalar-all")
    common.add_argument("--exact",
                        action="store_true",
                        help="rational arithmetic, exact zero residuals are required")
    common.add_argument("--tol",
                        type=float,
                        default=None,
                        help="residual tolerance, None stands for using default value")
    common.add_argument("--rank_tol",
                        type=float,
                        default=None,
                        help="singular value threshold of the rank tests, None stands for using default value")
    common.add_argument("--output",
                        type=str,
                        default=None,
                        help="path of the result document, stdout by default")
    common.add_argument("--log_path",
                        type=str,
                        default=None,
                        help="file additionally receiving the log records")
    common.add_argument("--verbose",
                        action="store_true",
                        help="log the chosen path, ranks and residuals to stderr")
    parser=argparse.ArgumentParser(prog="blocksof",description="block static output feedback gain synthesis")
    subparsers=parser.add_subparsers(dest="command")
    subparsers.required=True
    for name in ("check","reduce"):
        sub=subparsers.add_parser(name,parents=[common])
        sub.add_argument("system",type=str,help="system file")
    for name in ("assign","assign-solvents"):
        sub=subparsers.add_parser(name,parents=[common])
        sub.add_argument("system",type=str,help="system file")
        sub.add_argument("--targets",type=str,default=None,help="targets file with gammas or solvents")
    sub=subparsers.add_parser("verify",parents=[common])
    sub.add_argument("system",type=str,help="system file")
    sub.add_argument("--gain",type=str,default=None,help="gain file, a result document is accepted")
    sub.add_argument("--targets",type=str,default=None,help="targets file with gammas or solvents")
    sub.add_argument("--charpoly",action="store_true",help="compare characteristic polynomials as well")
    sub=subparsers.add_parser("ode2ss",parents=[common])
    sub.add_argument("ode",type=str,help="higher order equation file")
    return parser

def main(argv=None):
    '''run one command, returns the exit code

    0 success, 2 rank or solvability failure, 3 input or schema error, 4 numeric failure or an
    unwritable --output. documents of gains found despite a failed rank test are written with 2.
    '''
    parser=get_parser()
    try:
        args=parser.parse_args(argv)
    except SystemExit as err:
        return 0 if err.code==0 else 3
    #config
    Config.set_exact(args.exact)
    Config.set_method(methods[args.method])
    Config.set_tolerance(args.tol)
    Config.set_rank_tolerance(args.rank_tol)
    Config.set_log_level("INFO" if args.verbose else "WARNING")
    Config.set_log_path(args.log_path)
    config=Config.get_config()
    logger=logging.getLogger("INFO")
    try:
        doc,code=commands[args.command](args,config)
    except BlocksofError as err:
        logger.error(f"{type(err).__name__}: {err}")
        return err.exit_code
    try:
        dump_document(doc,args.output)
    except OSError as err:
        logger.error(f"cannot write {args.output}: {err}")
        return 4
    return code
