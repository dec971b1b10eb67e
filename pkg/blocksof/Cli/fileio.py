"""JSON documents read and written by the command line front end.

Matrices are row-major nested arrays in their physical layout, entries are JSON numbers or
"p/q" strings. Exact output prints integer-or-fraction strings, float output the shortest
round-trip decimals.
"""
import sys
import json
from fractions import Fraction

import numpy as np

from ..Config.define import SchemaError
from ..Algebra import BlockMatrix
from ..System import BlockSystem,TargetCoefficients,HigherOrderOde,as_form

def load_json(path):
    try:
        with open(path,"r") as json_file:
            doc=json.load(json_file)
    except OSError as err:
        raise SchemaError(f"cannot read {path}: {err.strerror}") from err
    except json.JSONDecodeError as err:
        raise SchemaError(f"{path} is not valid JSON: {err.msg} at line {err.lineno}") from err
    if(not isinstance(doc,dict)):
        raise SchemaError(f"{path} must hold one JSON object")
    return doc

def parse_number(x,where,exact):
    if(isinstance(x,bool) or not isinstance(x,(int,float,str))):
        raise SchemaError(f"{where}: expected a number or a \"p/q\" string, got {json.dumps(x)}")
    if isinstance(x,str):
        try:
            x=Fraction(x.strip())
        except (ValueError,ZeroDivisionError):
            raise SchemaError(f"{where}: cannot parse \"{x}\" as a number")
    if(exact):
        if(isinstance(x,float) and not np.isfinite(x)):
            raise SchemaError(f"{where}: non-finite entry {x}")
        return Fraction(x)
    return float(x)

def parse_int(doc,key,where,minimum=1):
    if(key not in doc):
        raise SchemaError(f"{where}: missing key \"{key}\"")
    value=doc[key]
    if(isinstance(value,bool) or not isinstance(value,int) or value<minimum):
        raise SchemaError(f"{where}: \"{key}\" must be an integer >= {minimum}, got {json.dumps(value)}")
    return value

def parse_matrix(data,rows,cols,name,s,exact):
    '''a rows x cols matrix, messages name the offending s x s block'''
    if(not isinstance(data,list) or len(data)!=rows):
        got=len(data) if isinstance(data,list) else type(data).__name__
        raise SchemaError(f"{name}: expected {rows} rows ({rows//s} block rows of size {s}), got {got}")
    out=np.empty((rows,cols),dtype=object if exact else np.float64)
    for i,row in enumerate(data):
        if(not isinstance(row,list) or len(row)!=cols):
            got=len(row) if isinstance(row,list) else type(row).__name__
            raise SchemaError(f"{name}: row {i+1} in block row {i//s+1} has {got} entries, "
                              f"expected {cols} ({cols//s} block columns of size {s})")
        for j,x in enumerate(row):
            out[i,j]=parse_number(x,f"{name} entry ({i+1},{j+1}) in block ({i//s+1},{j//s+1})",exact)
    return out

def parse_block_list(data,count,s,name,exact):
    if(not isinstance(data,list) or len(data)!=count):
        got=len(data) if isinstance(data,list) else type(data).__name__
        raise SchemaError(f"{name}: expected a list of {count} blocks, got {got}")
    return [parse_matrix(blk,s,s,f"{name}[{idx+1}]",s,exact) for idx,blk in enumerate(data)]

def load_system(path,exact=False):
    '''SystemFile: n, s, m, k, p, form, F, G, H'''
    doc=load_json(path)
    n=parse_int(doc,"n",path)
    s=parse_int(doc,"s",path)
    m=parse_int(doc,"m",path)
    k=parse_int(doc,"k",path)
    p=parse_int(doc,"p",path)
    form=doc.get("form","frobenius")
    if(not isinstance(form,str) or form.strip().lower() not in ("frobenius","hessenberg")):
        raise SchemaError(f"{path}: \"form\" must be \"frobenius\" or \"hessenberg\", got {json.dumps(form)}")
    if(p>n):
        raise SchemaError(f"{path}: p={p} exceeds n={n}")
    mats={}
    for key,rows,cols in (("F",n*s,n*s),("G",n*s,m*s),("H",k*s,n*s)):
        if(key not in doc):
            raise SchemaError(f"{path}: missing key \"{key}\"")
        mats[key]=parse_matrix(doc[key],rows,cols,key,s,exact)
    return BlockSystem(mats["F"],mats["G"],mats["H"],p,as_form(form),s=s,exact=exact)

def load_targets(path,n,s,exact=False):
    '''TargetsFile, exactly one of "gammas" or "solvents"

    Returns
    -------
    tuple
        ("gammas", TargetCoefficients) or ("solvents", list of arrays)
    '''
    doc=load_json(path)
    present=[key for key in ("gammas","solvents") if key in doc]
    if(len(present)!=1):
        raise SchemaError(f"{path}: exactly one of \"gammas\" or \"solvents\" is required")
    key=present[0]
    blocks=parse_block_list(doc[key],n,s,key,exact)
    if(key=="gammas"):
        return key,TargetCoefficients(blocks,exact=exact)
    return key,blocks

def load_gain(path,m,k,s,exact=False):
    '''GainFile, or a ResultFile carrying "Q"'''
    doc=load_json(path)
    if("Q" not in doc):
        raise SchemaError(f"{path}: missing key \"Q\"")
    Q=parse_matrix(doc["Q"],m*s,k*s,"Q",s,exact)
    return BlockMatrix(Q,s,exact=exact)

def load_ode(path,exact=False):
    '''OdeFile: n, s, m, k, p, A (n blocks), B (rows l = p..n of m blocks), C (rows ν = 1..p of k blocks)'''
    doc=load_json(path)
    n=parse_int(doc,"n",path)
    s=parse_int(doc,"s",path)
    m=parse_int(doc,"m",path)
    k=parse_int(doc,"k",path)
    p=parse_int(doc,"p",path)
    if(p>n):
        raise SchemaError(f"{path}: p={p} exceeds n={n}")
    for key in ("A","B","C"):
        if(key not in doc):
            raise SchemaError(f"{path}: missing key \"{key}\"")
    A=parse_block_list(doc["A"],n,s,"A",exact)
    if(not isinstance(doc["B"],list) or len(doc["B"])!=n-p+1):
        raise SchemaError(f"{path}: \"B\" must hold n-p+1={n-p+1} rows, one per l = {p}..{n}")
    B={}
    for row_idx,row in enumerate(doc["B"]):
        l=p+row_idx
        for alpha,blk in enumerate(parse_block_list(row,m,s,f"B row l={l}",exact)):
            B[(l,alpha+1)]=blk
    if(not isinstance(doc["C"],list) or len(doc["C"])!=p):
        raise SchemaError(f"{path}: \"C\" must hold p={p} rows, one per ν = 1..{p}")
    C={}
    for nu,row in enumerate(doc["C"]):
        for beta,blk in enumerate(parse_block_list(row,k,s,f"C row ν={nu+1}",exact)):
            C[(nu+1,beta+1)]=blk
    return HigherOrderOde(A,B,C,p,m,k,exact=exact)

#output
def format_number(x,exact):
    if(exact):
        x=Fraction(x)
        return str(x.numerator) if x.denominator==1 else f"{x.numerator}/{x.denominator}"
    x=float(x)
    return 0.0 if x==0 else x

def format_matrix(M,exact):
    data=M.data if isinstance(M,BlockMatrix) else np.asarray(M)
    return [[format_number(x,exact) for x in row] for row in data]

def format_scalar_list(values,exact):
    return [format_number(x,exact) for x in values]

def result_document(result,exact,solvable=None):
    '''ResultFile of a synthesis run, keys in fixed order'''
    doc={}
    doc["solvable"]=result.solvable if solvable is None else solvable
    doc["rank"]=int(result.rank_solvability)
    doc["required_rank"]=int(result.required_rank)
    doc["Q"]=format_matrix(result.Q,exact)
    doc["S"]=format_matrix(result.S,exact)
    doc["Phi"]=format_matrix(result.Phi,exact)
    doc["gammas"]=[format_matrix(g,exact) for g in result.targets]
    doc["residual_solve"]=format_number(result.residual_solve,exact)
    doc["residual_similarity"]=format_number(result.residual_similarity,exact)
    doc["method"]=result.method
    doc["diagnostics"]=list(result.diagnostics)
    if(result.solvent_residuals is not None):
        doc["solvent_residuals"]=format_scalar_list(result.solvent_residuals,exact)
    return doc

def system_document(sys,exact):
    doc={}
    doc["n"],doc["s"],doc["m"],doc["k"],doc["p"]=sys.n,sys.s,sys.m,sys.k,sys.p
    doc["form"]=sys.form.name.lower()
    doc["F"]=format_matrix(sys.F,exact)
    doc["G"]=format_matrix(sys.G,exact)
    doc["H"]=format_matrix(sys.H,exact)
    return doc

def dump_document(doc,output=None):
    text=json.dumps(doc,indent=2,ensure_ascii=False)+"\n"
    if(output is None):
        sys.stdout.write(text)
    else:
        with open(output,"w") as out_file:
            out_file.write(text)
