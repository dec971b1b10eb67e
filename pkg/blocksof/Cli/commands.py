import logging

from ..Config.define import ARITH,FORM,SchemaError,PreconditionError
from ..Algebra import identity
from ..System import closed_loop,frobenius_from_coeffs,ode_to_state_space,validate
from ..Reduction import hessenberg_to_frobenius
from ..Assignment import get_assign,amca_solvable,verify_similarity,char_poly
from ..Solvents import get_assign_solvents,SolventSet,gammas_from_solvents
from .fileio import load_system,load_targets,load_gain,load_ode
from .fileio import format_matrix,format_number,format_scalar_list,result_document,system_document

def log_cli(msg):
    logger=logging.getLogger("INFO")
    logger.info(msg)

def _exact(config):
    return config.solve.arith==ARITH.Exact

def cmd_check(args,config):
    '''rank test of a system file, exit 0 when solvable and 2 otherwise'''
    exact=_exact(config)
    sys=load_system(args.system,exact)
    report=amca_solvable(sys,config.solve.tol,config.solve.rank_tol)
    doc={}
    doc["solvable"]=report.solvable
    doc["rank"]=report.rank
    doc["required_rank"]=report.required
    doc["precheck_mk_ge_n"]=report.precheck_mk_ge_n
    if(report.rank_hat is not None):
        doc["rank_hat"]=report.rank_hat
    return doc,(0 if report.solvable else 2)

def _result_code(result):
    '''exit 2 when the gain was found although the rank test fails'''
    if(not result.solvable):
        log_cli(f"Gain realizes the targets with rank {result.rank_solvability}/{result.required_rank}, rank test not passed")
        return 2
    return 0

def _require_targets(args):
    if(args.targets is None):
        raise SchemaError("--targets is required for this command")

def cmd_assign(args,config):
    '''gain for a gammas file, exit 0 when the rank test passes and 2 otherwise'''
    exact=_exact(config)
    _require_targets(args)
    sys=load_system(args.system,exact)
    key,targets=load_targets(args.targets,sys.n,sys.s,exact)
    if(key!="gammas"):
        raise SchemaError(f"{args.targets}: holds solvents, use the assign-solvents command")
    assign=get_assign(config)
    result=assign(sys,targets)
    return result_document(result,exact),_result_code(result)

def cmd_assign_solvents(args,config):
    exact=_exact(config)
    _require_targets(args)
    sys=load_system(args.system,exact)
    key,solvents=load_targets(args.targets,sys.n,sys.s,exact)
    if(key!="solvents"):
        raise SchemaError(f"{args.targets}: holds gammas, use the assign command")
    ss=SolventSet(solvents,config.solve.rank_tol)
    assign_solvents=get_assign_solvents(config)
    result=assign_solvents(sys,ss)
    return result_document(result,exact),_result_code(result)

def cmd_reduce(args,config):
    '''S and Phi of the reduction of F, frobenius input gives S = I'''
    exact=_exact(config)
    sys=load_system(args.system,exact)
    violations=validate(sys,config.solve.tol)
    if(violations):
        raise PreconditionError(f"{len(violations)} structural violation(s), first: {violations[0]}")
    if(sys.form==FORM.Frobenius):
        S,Phi,residual=identity(sys.n,sys.s,exact=exact),sys.F,0
    else:
        red=hessenberg_to_frobenius(sys.F,tol=config.solve.tol)
        S,Phi,residual=red.S,red.Phi,red.residual
    doc={}
    doc["S"]=format_matrix(S,exact)
    doc["Phi"]=format_matrix(Phi,exact)
    doc["residual"]=format_number(residual,exact)
    return doc,0

def cmd_verify(args,config):
    '''check a gain against targets, exit 0 when S(F+GQH)S⁻¹ = Φ holds and 4 otherwise'''
    exact=_exact(config)
    _require_targets(args)
    if(args.gain is None):
        raise SchemaError("--gain is required for the verify command")
    sys=load_system(args.system,exact)
    Q=load_gain(args.gain,sys.m,sys.k,sys.s,exact)
    key,targets=load_targets(args.targets,sys.n,sys.s,exact)
    if(key=="solvents"):
        targets=gammas_from_solvents(SolventSet(targets,config.solve.rank_tol))
    M=closed_loop(sys,Q)
    Phi=frobenius_from_coeffs(targets)
    doc={}
    try:
        red=hessenberg_to_frobenius(M,tol=config.solve.tol)
        check=verify_similarity(red.S,M,Phi,config.solve.tol)
        ok,residual=check.ok,check.residual
        doc["S"]=format_matrix(red.S,exact)
    except PreconditionError as err:
        log_cli(f"Closed loop matrix cannot be reduced: {err}")
        ok,residual=False,None
    doc["ok"]=ok
    doc["residual_similarity"]=None if residual is None else format_number(residual,exact)
    if(args.charpoly):
        poly_loop=char_poly(M)
        poly_target=char_poly(Phi)
        if(exact):
            match=(poly_loop==poly_target)
        else:
            scale=max([1.0]+[abs(float(x)) for x in poly_target])
            match=all(abs(float(a)-float(b))<=1e-6*scale for a,b in zip(poly_loop,poly_target))
        doc["charpoly_closed_loop"]=format_scalar_list(poly_loop,exact)
        doc["charpoly_target"]=format_scalar_list(poly_target,exact)
        doc["charpoly_match"]=bool(match)
        ok=ok and match
    return doc,(0 if ok else 4)

def cmd_ode2ss(args,config):
    exact=_exact(config)
    ode=load_ode(args.ode,exact)
    sys=ode_to_state_space(ode)
    return system_document(sys,exact),0
