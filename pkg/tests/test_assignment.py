import unittest

import numpy as np
import scipy.linalg
from hypothesis import given,settings
from hypothesis import strategies as st

from blocksof import Config
from blocksof.Config.define import METHOD,ARITH,FORM,PreconditionError,UnsolvableError,NumericError
from blocksof.Algebra import BlockMatrix,identity,vecc,kron,to_fraction_array,is_scalar_blocks,rank_with_tolerance
from blocksof.System import BlockSystem,TargetCoefficients,closed_loop,frobenius_from_coeffs
from blocksof.Reduction import gamma_from_perturbation
from blocksof.Assignment import assign,get_assign,amca_solvable,build_theta,build_theta_hat,build_omega,build_xi
from blocksof.Assignment import solve_gain,solve_gain_hessenberg,solve_gain_scalar_h,solve_gain_scalar_fg
from blocksof.Assignment import solve_gain_scalar_all,check_scalar_all,scalar_poly_gain
from blocksof.Assignment import min_norm_solve,verify_similarity,verify_char_poly,char_poly,transformed_system
from blocksof.Assignment.general import target_T_hat
from tests import cases

seeds=st.integers(min_value=0,max_value=2**32-1)

def realizable_targets(rng,sys):
    '''coefficients realized by a random integer gain, so the gain equations are consistent'''
    Q=rng.randint(-2,3,size=(sys.m*sys.s,sys.k*sys.s))
    Q=to_fraction_array(Q) if sys.exact else Q.astype(float)
    D=closed_loop(sys,Q)-sys.F
    return gamma_from_perturbation(sys.F,D,sys.p)

class TestSolvability(unittest.TestCase):
    def test_example_one(self):
        report=amca_solvable(cases.ex1_system())
        self.assertTrue(report.solvable)
        self.assertEqual((report.rank,report.required),(12,12))
        self.assertTrue(report.precheck_mk_ge_n)
        self.assertIsNone(report.rank_hat)

    def test_example_two_reports_both_ranks(self):
        report=amca_solvable(cases.ex2_system())
        self.assertTrue(report.solvable)
        self.assertEqual(report.rank,12)
        self.assertEqual(report.rank_hat,12)

    def test_example_three_ranks_differ(self):
        report=amca_solvable(cases.ex3_system())
        self.assertFalse(report.solvable)
        self.assertEqual((report.rank,report.required),(12,16))
        self.assertEqual(report.rank_hat,16)

    def test_float_matches_exact(self):
        report=amca_solvable(cases.ex3_system(exact=False))
        self.assertEqual((report.rank,report.rank_hat),(12,16))

    def test_precheck(self):
        F,G,H=cases.random_frobenius(np.random.RandomState(3),n=3,m=1,k=2)
        report=amca_solvable(BlockSystem(F,G,H,2,FORM.Frobenius,s=2))
        self.assertFalse(report.precheck_mk_ge_n)
        self.assertFalse(report.solvable)

    def test_general_form_rejected(self):
        sys=BlockSystem(np.ones((4,4)),np.ones((4,2)),np.ones((2,4)),1,FORM.General,s=2)
        with self.assertRaises(PreconditionError):
            amca_solvable(sys)

class TestGeneralPath(unittest.TestCase):
    def test_theta_equations(self):
        sys=cases.ex1_system()
        T=target_T_hat(sys,cases.ex1_targets())
        w=np.vstack([vecc(t).data for t in T]).reshape(-1)
        self.assertEqual(list(w),cases.EX1_W)
        theta=build_theta(sys)
        self.assertEqual(theta.shape,(12,16))
        v=to_fraction_array(np.array(cases.EX1_V,dtype=object))
        self.assertEqual(list(theta.data.dot(v)),cases.EX1_W)

    def test_example_one(self):
        result=assign(cases.ex1_system(),cases.ex1_targets())
        self.assertEqual(result.method,"general")
        self.assertEqual(result.Q,BlockMatrix(cases.exact_array(cases.EX1_Q),2))
        self.assertEqual((result.rank_solvability,result.required_rank),(12,12))
        self.assertTrue(result.solvable)
        self.assertEqual(result.residual_solve,0)
        self.assertEqual(result.residual_similarity,0)
        np.testing.assert_array_equal(result.S.block(2,0),cases.exact_array(cases.EX1_S31))
        np.testing.assert_array_equal(result.S.block(2,1),cases.exact_array(cases.EX1_S32))
        np.testing.assert_array_equal(result.S.block(2,2),cases.I2)
        self.assertEqual(result.Phi,frobenius_from_coeffs(cases.ex1_targets()))

    def test_example_one_float(self):
        result=assign(cases.ex1_system(exact=False),cases.ex1_targets(exact=False))
        np.testing.assert_allclose(result.Q.data,np.array(cases.EX1_Q,dtype=float),atol=1e-8)
        self.assertLess(result.residual_similarity,1e-8)

    def test_exact_arith_converts_float_input(self):
        result=assign(cases.ex1_system(exact=False),cases.ex1_targets(exact=False),arith=ARITH.Exact)
        self.assertTrue(result.Q.exact)
        self.assertEqual(result.Q,BlockMatrix(cases.exact_array(cases.EX1_Q),2))

    def test_example_two(self):
        result=assign(cases.ex2_system(),cases.ex2_targets())
        self.assertEqual(result.Q,BlockMatrix(cases.exact_array(cases.EX2_Q),2))
        self.assertEqual(result.S,BlockMatrix(cases.exact_array(cases.EX2_R),2))
        M=BlockMatrix(cases.exact_array(cases.EX2_CLOSED_LOOP),2)
        self.assertEqual(closed_loop(cases.ex2_system(),result.Q),M)
        self.assertTrue(verify_similarity(result.S,M,frobenius_from_coeffs(cases.ex2_targets())).ok)
        self.assertTrue(any("hessenberg" in d for d in result.diagnostics))

    def test_hessenberg_entry_point(self):
        result=solve_gain_hessenberg(cases.ex2_system(),cases.ex2_targets())
        self.assertEqual(result.Q,BlockMatrix(cases.exact_array(cases.EX2_Q),2))
        with self.assertRaises(PreconditionError):
            solve_gain(cases.ex2_system(),cases.ex2_targets())

    def test_open_loop_targets_give_zero_gain(self):
        sys=cases.ex1_system()
        targets=TargetCoefficients(sys.coefficients(),exact=True)
        result=assign(sys,targets)
        self.assertEqual(result.Q.max_abs(),0)
        self.assertEqual(result.S,identity(3,2,exact=True))

    def test_unsolvable_block_coefficients(self):
        sys=cases.ex4_system()
        self.assertFalse(amca_solvable(sys).solvable)
        with self.assertRaises(UnsolvableError) as ctx:
            assign(sys,cases.ex4_targets())
        self.assertIn("inconclusive",str(ctx.exception))
        self.assertEqual(ctx.exception.required,8)

    @settings(max_examples=100,deadline=None)
    @given(seed=seeds)
    def test_realizable_targets_float(self,seed):
        rng=np.random.RandomState(seed)
        sys=cases.random_frobenius_system(rng)
        targets=realizable_targets(rng,sys)
        result=assign(sys,targets)
        realized=gamma_from_perturbation(sys.F,closed_loop(sys,result.Q)-sys.F,sys.p)
        scale=max(1.0,max(abs(x) for g in targets for x in g.flat))
        self.assertTrue(realized.equals(targets,1e-6*scale))

    @settings(max_examples=100,deadline=None)
    @given(seed=seeds,n=st.integers(min_value=1,max_value=4),s=st.integers(min_value=1,max_value=2),
           m=st.integers(min_value=1,max_value=3),k=st.integers(min_value=1,max_value=3))
    def test_realizable_targets_exact(self,seed,n,s,m,k):
        rng=np.random.RandomState(seed)
        p=int(rng.randint(1,n+1))
        sys=cases.random_frobenius_system(rng,n=n,s=s,m=m,k=k,p=p,exact=True)
        targets=realizable_targets(rng,sys)
        result=assign(sys,targets,method=METHOD.General)
        self.assertEqual(result.residual_similarity,0)
        self.assertEqual(result.residual_charpoly,0)
        Phi=frobenius_from_coeffs(targets)
        self.assertEqual(char_poly(closed_loop(sys,result.Q)),char_poly(Phi))
        realized=gamma_from_perturbation(sys.F,closed_loop(sys,result.Q)-sys.F,sys.p)
        self.assertTrue(realized.equals(targets))

    @settings(max_examples=100,deadline=None)
    @given(seed=seeds)
    def test_realizable_targets_hessenberg(self,seed):
        rng=np.random.RandomState(seed)
        sys=cases.random_hessenberg_system(rng).to_exact()
        tsys,_=transformed_system(sys)
        targets=realizable_targets(rng,tsys)
        result=assign(sys,targets)
        self.assertTrue(verify_similarity(result.S,closed_loop(sys,result.Q),frobenius_from_coeffs(targets)).ok)
        self.assertEqual(char_poly(closed_loop(sys,result.Q)),char_poly(frobenius_from_coeffs(targets)))

class TestScalarPaths(unittest.TestCase):
    @settings(max_examples=50,deadline=None)
    @given(seed=seeds)
    def test_scalar_h_matches_general(self,seed):
        rng=np.random.RandomState(seed)
        sys=cases.random_scalar_h_system(rng).to_exact()
        targets=realizable_targets(rng,sys)
        by_h=solve_gain_scalar_h(sys,targets)
        by_general=solve_gain(sys,targets)
        self.assertEqual(by_h.method,"scalar_h")
        self.assertEqual(by_h.Q,by_general.Q)
        self.assertEqual(by_h.required_rank,sys.n*sys.s)

    @settings(max_examples=50,deadline=None)
    @given(seed=seeds)
    def test_xi_transposed_is_omega(self,seed):
        rng=np.random.RandomState(seed)
        sys=cases.random_scalar_system(rng)
        H=rng.randint(-3,4,size=(sys.k*sys.s,sys.n*sys.s)).astype(float)
        H[:,sys.p*sys.s:]=0
        sys=sys.with_matrices(sys.F,sys.G,H)
        np.testing.assert_array_equal(build_xi(sys).data.T,build_omega(sys).data)

    @settings(max_examples=50,deadline=None)
    @given(seed=seeds)
    def test_scalar_fg_matches_general(self,seed):
        rng=np.random.RandomState(seed)
        sys=cases.random_scalar_system(rng)
        H=rng.randint(-3,4,size=(sys.k*sys.s,sys.n*sys.s)).astype(float)
        H[:,sys.p*sys.s:]=0
        sys=sys.with_matrices(sys.F,sys.G,H).to_exact()
        targets=realizable_targets(rng,sys)
        by_fg=solve_gain_scalar_fg(sys,targets)
        by_general=solve_gain(sys,targets)
        self.assertEqual(by_fg.method,"scalar_fg")
        self.assertEqual(by_fg.Q,by_general.Q)

    def test_scalar_preconditions(self):
        with self.assertRaises(PreconditionError):
            solve_gain_scalar_h(cases.ex1_system(),cases.ex1_targets())
        with self.assertRaises(PreconditionError):
            solve_gain_scalar_fg(cases.ex1_system(),cases.ex1_targets())

    def test_scalar_all(self):
        rng=np.random.RandomState(7)
        sys=cases.random_scalar_system(rng).to_exact()
        check=check_scalar_all(sys)
        if(not check.independent):
            with self.assertRaises(UnsolvableError):
                solve_gain_scalar_all(sys,cases.random_gammas(rng,n=2,exact=True))
            return
        targets=realizable_targets(rng,sys)
        result=solve_gain_scalar_all(sys,targets)
        self.assertEqual(result.method,"scalar_all")
        self.assertEqual(assign(sys,targets).method,"scalar_all")

    def test_scalar_all_dependent(self):
        F=np.kron(np.array([[0,1],[0,0]]),np.eye(2))
        G=np.kron(np.array([[0],[1]]),np.eye(2))
        H=np.kron(np.array([[1,0],[2,0]]),np.eye(2))
        sys=BlockSystem(F,G,H,2,FORM.Frobenius,s=2)
        self.assertFalse(check_scalar_all(sys).independent)
        with self.assertRaises(UnsolvableError):
            solve_gain_scalar_all(sys,TargetCoefficients([np.eye(2),np.eye(2)]))
        with self.assertRaises(UnsolvableError):
            assign(sys,TargetCoefficients([np.eye(2),np.eye(2)]),method=METHOD.Scalar_all)

def random_pattern(rng,n,s,m,k,p):
    '''exact G and H with random integer blocks in the zero pattern of p'''
    G=rng.randint(-3,4,size=(n*s,m*s))
    G[:(p-1)*s,:]=0
    H=rng.randint(-3,4,size=(k*s,n*s))
    H[:,p*s:]=0
    return to_fraction_array(G),to_fraction_array(H)

def scalar_hessenberg_system(rng,n,s,m,k,p):
    '''F̃ = F̃_0⊗I with F̃_0 lower hessenberg and nonzero superdiagonal, G̃ and H̃ with full blocks'''
    F0=rng.randint(-2,3,size=(n,n))
    F0[np.triu_indices(n,2)]=0
    for i in range(n-1):
        F0[i,i+1]=rng.choice([-2,-1,1,2])
    F=to_fraction_array(np.kron(F0,np.eye(s,dtype=int)))
    G,H=random_pattern(rng,n,s,m,k,p)
    return BlockSystem(F,G,H,p,FORM.Hessenberg,s=s,exact=True)

class TestStructuralIdentities(unittest.TestCase):
    @settings(max_examples=50,deadline=None)
    @given(seed=seeds,n=st.integers(1,3),s=st.integers(1,3),m=st.integers(1,2),k=st.integers(1,2))
    def test_theta_with_scalar_f(self,seed,n,s,m,k):
        rng=np.random.RandomState(seed)
        p=rng.randint(1,n+1)
        sys=cases.random_scalar_system(rng,n=n,s=s,m=m,k=k,p=p).to_exact()
        G,H=random_pattern(rng,n,s,m,k,p)
        sys=sys.with_matrices(sys.F,G,H)
        self.assertEqual(build_theta(sys,scalar_f=True),build_theta(sys))

    @settings(max_examples=30,deadline=None)
    @given(seed=seeds,n=st.integers(2,3),s=st.integers(1,2),m=st.integers(1,2),k=st.integers(1,2))
    def test_theta_tilde_is_theta_hat_for_scalar_transform(self,seed,n,s,m,k):
        rng=np.random.RandomState(seed)
        p=rng.randint(1,n+1)
        sys=scalar_hessenberg_system(rng,n,s,m,k,p)
        tsys,red=transformed_system(sys)
        self.assertTrue(is_scalar_blocks(red.S))
        self.assertEqual(build_theta(tsys),build_theta_hat(sys))
        report=amca_solvable(sys)
        self.assertEqual(report.rank,report.rank_hat)

    @settings(max_examples=50,deadline=None)
    @given(seed=seeds,n=st.integers(1,3),s=st.integers(1,3),m=st.integers(1,2),deficient=st.booleans())
    def test_omega_rank_with_identity_output(self,seed,n,s,m,deficient):
        # Ω is block anti-triangular with G_n on the anti-diagonal
        rng=np.random.RandomState(seed)
        F,_,_=cases.random_frobenius(rng,n=n,s=s,m=m,k=n,p=n)
        G=np.zeros((n*s,m*s),dtype=int)
        Gn=rng.randint(-3,4,size=(s,m*s))
        if(deficient):
            Gn[-1,:]=Gn[0,:]*rng.randint(-2,3) if s>1 else 0
        G[(n-1)*s:,:]=Gn
        sys=BlockSystem(to_fraction_array(F.astype(int)),to_fraction_array(G),to_fraction_array(np.eye(n*s,dtype=int)),
                        n,FORM.Frobenius,s=s,exact=True)
        omega_full=rank_with_tolerance(build_omega(sys).data)==n*s
        self.assertEqual(omega_full,rank_with_tolerance(to_fraction_array(Gn))==s)
        if(deficient):
            self.assertFalse(omega_full)

    @settings(max_examples=50,deadline=None)
    @given(seed=seeds,n=st.integers(1,3),s=st.integers(1,3),m=st.integers(1,2),k=st.integers(1,2))
    def test_omega_of_scalar_system(self,seed,n,s,m,k):
        rng=np.random.RandomState(seed)
        p=rng.randint(1,n+1)
        sys=cases.random_scalar_system(rng,n=n,s=s,m=m,k=k,p=p).to_exact()
        check=check_scalar_all(sys)
        omega=build_omega(sys)
        self.assertEqual(omega,kron(BlockMatrix(check.omega0,1,exact=True),identity(1,s,exact=True)))
        self.assertEqual(rank_with_tolerance(omega.data),s*check.rank)

    @settings(max_examples=50,deadline=None)
    @given(seed=seeds,n=st.integers(1,3),s=st.integers(1,2),m=st.integers(1,2),k=st.integers(1,2))
    def test_scalar_independence_matches_rank_test(self,seed,n,s,m,k):
        rng=np.random.RandomState(seed)
        p=rng.randint(1,n+1)
        sys=cases.random_scalar_system(rng,n=n,s=s,m=m,k=k,p=p,low=-1,high=1).to_exact()
        self.assertEqual(check_scalar_all(sys).independent,amca_solvable(sys).solvable)


class TestScalarPolynomial(unittest.TestCase):
    def test_every_scalar_polynomial(self):
        rng=np.random.RandomState(11)
        sys=cases.ex4_system()
        for _ in range(10):
            deltas=[int(d) for d in rng.randint(-9,10,size=4)]
            M=closed_loop(sys,scalar_poly_gain(deltas))
            self.assertEqual(char_poly(M),deltas)

    def test_float_gain(self):
        M=closed_loop(cases.ex4_system(exact=False),scalar_poly_gain([0.5,1.5,-2.0,3.0]))
        np.testing.assert_allclose(char_poly(M),[0.5,1.5,-2.0,3.0],atol=1e-10)

    @settings(max_examples=100,deadline=None)
    @given(q=st.lists(st.integers(-9,9),min_size=6,max_size=6))
    def test_polynomial_of_free_gain(self,q):
        q11,q12,q13,q21,q22,q23=q
        Q=cases.exact_array([[q11,q12,q13,0],[q21,q22,q23,0]])
        expected=[-q13,-(q11+q22),q13*q22-q12*q23,q11*q22-q12*q21]
        self.assertEqual(char_poly(closed_loop(cases.ex4_system(),Q)),expected)

class TestSolver(unittest.TestCase):
    @settings(max_examples=100,deadline=None)
    @given(seed=seeds)
    def test_min_norm_in_row_space(self,seed):
        rng=np.random.RandomState(seed)
        a=rng.randint(-5,6,size=(3,6)).astype(float)
        b=rng.randint(-5,6,size=3).astype(float)
        if(np.linalg.matrix_rank(a)<3):
            return
        x,residual,rank=min_norm_solve(a,b)
        self.assertEqual(rank,3)
        np.testing.assert_allclose(a.dot(x),b,atol=1e-9)
        np.testing.assert_allclose(scipy.linalg.null_space(a).T.dot(x),0,atol=1e-9)
        x_exact,residual_exact,_=min_norm_solve(to_fraction_array(a.astype(int)),to_fraction_array(b.astype(int)))
        self.assertEqual(residual_exact,0)
        np.testing.assert_allclose(x_exact.astype(float),x,atol=1e-9)

    def test_rank_deficient_consistent(self):
        a=np.array([[1.0,1.0],[2.0,2.0]])
        x,residual,rank=min_norm_solve(a,np.array([2.0,4.0]))
        self.assertEqual(rank,1)
        np.testing.assert_allclose(x,[1.0,1.0])

    def test_inconsistent_is_inconclusive(self):
        a=np.array([[1.0,1.0],[2.0,2.0]])
        with self.assertRaises(UnsolvableError) as ctx:
            min_norm_solve(a,np.array([1.0,3.0]))
        self.assertIn("inconclusive",str(ctx.exception))
        with self.assertRaises(UnsolvableError) as ctx:
            min_norm_solve(to_fraction_array(a.astype(int)),to_fraction_array(np.array([1,3])))
        self.assertGreater(ctx.exception.residual,0)

class TestCharPoly(unittest.TestCase):
    def test_frobenius_block_polynomial(self):
        # det(Iλ³ + 6Iλ² + 11Iλ + 6I) = ((λ+1)(λ+2)(λ+3))²
        expected=[12,58,144,193,132,36]
        Phi=frobenius_from_coeffs(cases.ex1_targets())
        self.assertEqual(char_poly(Phi),expected)
        np.testing.assert_allclose(char_poly(Phi.to_float()),expected,rtol=1e-9)

    def test_closed_loop_of_example_one(self):
        M=BlockMatrix(cases.exact_array(cases.EX1_CLOSED_LOOP),2)
        self.assertEqual(char_poly(M),[12,58,144,193,132,36])

    def test_similarity_singular_transform(self):
        S=BlockMatrix(np.array([[1.0,2.0],[2.0,4.0]]),1)
        with self.assertRaises(NumericError):
            verify_similarity(S,np.eye(2),np.eye(2))

    def test_char_poly_check(self):
        Phi=frobenius_from_coeffs(cases.ex1_targets())
        M=BlockMatrix(cases.exact_array(cases.EX1_CLOSED_LOOP),2)
        check=verify_char_poly(M,Phi)
        self.assertTrue(check.ok)
        self.assertEqual(check.residual,0)
        wrong=verify_char_poly(identity(3,2,exact=True),Phi)
        self.assertFalse(wrong.ok)
        self.assertGreater(wrong.residual,0)
        self.assertTrue(verify_char_poly(M.to_float(),Phi.to_float()).ok)

class TestFactory(unittest.TestCase):
    def tearDown(self):
        Config.set_exact(False)
        Config.set_method(METHOD.Auto)

    def test_get_assign(self):
        Config.set_exact(True)
        Config.set_method(METHOD.General)
        config=Config.get_config()
        assign_fn=get_assign(config)
        self.assertEqual(assign_fn.keywords["method"],METHOD.General)
        self.assertEqual(assign_fn.keywords["tol"],0)
        result=assign_fn(cases.ex1_system(exact=False),cases.ex1_targets(exact=False))
        self.assertTrue(result.Q.exact)
        self.assertEqual(result.Q,BlockMatrix(cases.exact_array(cases.EX1_Q),2))

if __name__=="__main__":
    unittest.main()
