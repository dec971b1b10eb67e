class SolvabilityReport:
    '''outcome of the rank test rank Θ = ns²

    Parameters
    ----------
    solvable : bool
        the rank test passed and mk >= n
    rank : int
        rank of Θ, of the transformed system for hessenberg input
    required : int
        ns²
    precheck_mk_ge_n : bool
        the necessary condition mk >= n
    rank_hat : int or None
        rank of Θ̂ built from the untransformed hessenberg matrices, diagnostic only
    '''
    def __init__(self,solvable,rank,required,precheck_mk_ge_n,rank_hat=None):
        self.solvable=solvable
        self.rank=rank
        self.required=required
        self.precheck_mk_ge_n=precheck_mk_ge_n
        self.rank_hat=rank_hat

    def __repr__(self):
        return (f"SolvabilityReport(solvable={self.solvable}, rank={self.rank}, required={self.required}, "
                f"precheck_mk_ge_n={self.precheck_mk_ge_n}, rank_hat={self.rank_hat})")

class AssignmentResult:
    '''a synthesized gain and the similarity certifying it

    S(F+GQH)S⁻¹ = Phi, with S = ℛ = S·S̃ for hessenberg input. residual_solve is the max-norm
    residual of the linear system solved for the gain, residual_similarity the max-norm residual
    of the similarity, residual_charpoly the largest difference between the characteristic
    polynomial coefficients of F+GQH and Phi. solvent_residuals is only set by the solvent pipeline.
    '''
    def __init__(self,Q,S,Phi,targets,rank_solvability,required_rank,residual_solve,residual_similarity,
                 method,diagnostics=None,solvent_residuals=None,residual_charpoly=None):
        self.Q=Q
        self.S=S
        self.Phi=Phi
        self.targets=targets
        self.rank_solvability=rank_solvability
        self.required_rank=required_rank
        self.residual_solve=residual_solve
        self.residual_similarity=residual_similarity
        self.method=method
        self.diagnostics=[] if diagnostics is None else list(diagnostics)
        self.solvent_residuals=solvent_residuals
        self.residual_charpoly=residual_charpoly

    @property
    def solvable(self):
        return self.rank_solvability>=self.required_rank

    def __repr__(self):
        return (f"AssignmentResult(method={self.method}, rank={self.rank_solvability}/{self.required_rank}, "
                f"residual_solve={float(self.residual_solve):.3e}, "
                f"residual_similarity={float(self.residual_similarity):.3e})")
