import itertools
import unittest

import numpy as np
import scipy.linalg
from hypothesis import given,settings
from hypothesis import strategies as st

from blocksof import Config
from blocksof.Config.define import DimensionError,SolventSetError
from blocksof.Algebra import BlockMatrix,to_fraction_array
from blocksof.System import frobenius_from_coeffs
from blocksof.Solvents import SolventSet,block_vandermonde,vandermonde_ranks,is_vandermonde_singular,gammas_from_solvents
from blocksof.Solvents import verify_solvent,assign_solvents,get_assign_solvents
from tests import cases

seeds=st.integers(min_value=0,max_value=2**32-1)

class TestVandermonde(unittest.TestCase):
    def test_blocks(self):
        ls=cases.ex5_solvents()
        V=block_vandermonde(ls)
        self.assertEqual((V.q,V.s),(3,2))
        for j,L in enumerate(ls):
            np.testing.assert_array_equal(V.block(0,j),cases.I2)
            np.testing.assert_array_equal(V.block(1,j),L)
            np.testing.assert_array_equal(V.block(2,j),L.dot(L))

    def test_repeated_solvents(self):
        ls=[np.eye(2),np.eye(2)]
        self.assertTrue(is_vandermonde_singular(ls))
        with self.assertRaises(SolventSetError):
            SolventSet(ls)

    def test_singular_block_transpose_rejected(self):
        # V has full rank, V^𝒯 does not
        ls=[cases.exact_array([[3,3],[3,1]]),cases.exact_array([[2,-3],[0,-1]]),cases.exact_array([[-2,-1],[0,-1]])]
        V=block_vandermonde(ls)
        self.assertEqual(vandermonde_ranks(V),(6,5))
        self.assertTrue(is_vandermonde_singular(ls))
        with self.assertRaises(SolventSetError):
            SolventSet(ls)

    def test_shape_checks(self):
        with self.assertRaises(SolventSetError):
            SolventSet([])
        with self.assertRaises(SolventSetError):
            SolventSet([np.eye(2),np.eye(3)])

class TestGammas(unittest.TestCase):
    def test_example_solvents(self):
        gammas=gammas_from_solvents(SolventSet(cases.ex5_solvents()))
        self.assertTrue(gammas.exact)
        self.assertTrue(gammas.equals(cases.ex1_targets()))

    def test_single_solvent(self):
        L=np.array([[1.0,2.0],[0.0,3.0]])
        gammas=gammas_from_solvents(SolventSet([L]))
        np.testing.assert_allclose(gammas[0],-L)

    def test_spectrum(self):
        ss=SolventSet(cases.ex5_solvents())
        self.assertEqual(sorted(ss.spectrum),[-3,-3,-2,-2,-1,-1])
        np.testing.assert_allclose(sorted(np.real(SolventSet(cases.ex5_solvents(exact=False)).spectrum)),
                                   [-3,-3,-2,-2,-1,-1])
        full=SolventSet([cases.exact_array([[1,1],[1,2]])])
        self.assertIsNone(full.spectrum)

    def test_spectrum_matches_frobenius_eigenvalues(self):
        ss=SolventSet(cases.ex5_solvents(exact=False))
        Phi=frobenius_from_coeffs(gammas_from_solvents(ss))
        eig=np.sort(np.real(scipy.linalg.eigvals(Phi.data)))
        np.testing.assert_allclose(eig,np.sort(np.real(ss.spectrum)),atol=1e-6)

    def test_permutation_invariance(self):
        reference=gammas_from_solvents(SolventSet(cases.ex5_solvents()))
        for perm in itertools.permutations(cases.ex5_solvents()):
            self.assertTrue(gammas_from_solvents(SolventSet(list(perm))).equals(reference))

    @settings(max_examples=100,deadline=None)
    @given(seed=seeds,n=st.integers(min_value=1,max_value=3))
    def test_every_solvent_verifies(self,seed,n):
        rng=np.random.RandomState(seed)
        ls=[to_fraction_array(rng.randint(-3,4,size=(2,2))) for _ in range(n)]
        if(is_vandermonde_singular(ls)):
            with self.assertRaises(SolventSetError):
                SolventSet(ls)
            return
        gammas=gammas_from_solvents(SolventSet(ls))
        for L in ls:
            check=verify_solvent(L,gammas)
            self.assertTrue(check.ok)
            self.assertEqual(check.residual,0)

class TestVerifySolvent(unittest.TestCase):
    def test_non_solvent(self):
        check=verify_solvent(np.eye(2),cases.ex1_targets())
        self.assertFalse(check.ok)
        self.assertEqual(check.residual,24)

    def test_dimension(self):
        with self.assertRaises(DimensionError):
            verify_solvent(np.eye(3),cases.ex1_targets())

class TestAssignSolvents(unittest.TestCase):
    def tearDown(self):
        Config.set_exact(False)

    def test_example(self):
        result=assign_solvents(cases.ex1_system(),SolventSet(cases.ex5_solvents()))
        self.assertEqual(result.Q,BlockMatrix(cases.exact_array(cases.EX1_Q),2))
        self.assertEqual(result.solvent_residuals,[0,0,0])

    def test_order_does_not_change_gain(self):
        ls=cases.ex5_solvents()
        first=assign_solvents(cases.ex1_system(),ls)
        second=assign_solvents(cases.ex1_system(),ls[::-1])
        self.assertEqual(first.Q,second.Q)

    def test_float(self):
        result=assign_solvents(cases.ex1_system(exact=False),cases.ex5_solvents(exact=False))
        np.testing.assert_allclose(result.Q.data,np.array(cases.EX1_Q,dtype=float),atol=1e-8)
        self.assertTrue(all(r<1e-8 for r in result.solvent_residuals))

    def test_size_mismatch(self):
        with self.assertRaises(DimensionError):
            assign_solvents(cases.ex1_system(),cases.ex5_solvents()[:2])

    def test_factory(self):
        Config.set_exact(True)
        assign_fn=get_assign_solvents(Config.get_config())
        result=assign_fn(cases.ex1_system(exact=False),cases.ex5_solvents(exact=False))
        self.assertTrue(result.Q.exact)
        self.assertEqual(result.solvent_residuals,[0,0,0])

if __name__=="__main__":
    unittest.main()
