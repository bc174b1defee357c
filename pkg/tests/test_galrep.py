import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prymverify import galrep as G
from prymverify.ffchar import FqField
from prymverify.galrep import (
    ClosureOverflow,
    FiniteGroup,
    FiniteLocalRing,
    GroupRep,
    MatrixAlgebra,
    PreconditionError,
    dickson_classify,
    span_check,
    taylor_wiles_check,
    trace_conclusion_check,
)

RINGS = ["F_7", "F_25", "Z/9", "Z/8", "GR(9,2)", "Z/27"]


@pytest.mark.parametrize("spec", RINGS)
def test_ring_axioms(spec):
    R = FiniteLocalRing.from_spec(spec)
    rng = np.random.default_rng(1)
    for a, b, c in rng.integers(0, R.size, (200, 3)):
        a, b, c = int(a), int(b), int(c)
        assert R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c))
        assert R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c))
        assert R.mul(a, b) == R.mul(b, a)
        assert R.add(a, R.neg(a)) == 0


@pytest.mark.parametrize("spec", RINGS)
def test_local_structure(spec):
    R = FiniteLocalRing.from_spec(spec)
    units = R.units()
    assert len(units) == R.size - R.size // R.residue_size
    for u in units:
        assert R.mul(u, R.inv(u)) == 1
    # reduction to the residue field is a ring map onto F_{l^f}
    k = FqField(R.ell, R.f)
    for a in range(0, R.size, max(1, R.size // 20)):
        for b in range(0, R.size, max(1, R.size // 15)):
            assert R.residue_t[R.mul(a, b)] == k.mul(R.residue_t[a], R.residue_t[b])
            assert R.residue_t[R.add(a, b)] == k.add(R.residue_t[a], R.residue_t[b])
    assert sorted(set(R.residue_t)) == list(range(R.residue_size))


def test_field_codes_match_fqfield():
    R, F = FiniteLocalRing.from_spec("F_49"), FqField(7, 2)
    for a in range(0, 49, 3):
        for b in range(49):
            assert R.mul(a, b) == F.mul(a, b)


def test_valuation_and_division():
    R = FiniteLocalRing.from_spec("GR(9,2)")
    x = R.element([3, 6])
    assert R.valuation(x) == 1
    assert R.mul(R.scalar(3), R.divide_ell_power(x, 1)) == x
    assert R.valuation(0) == 2
    with pytest.raises(ZeroDivisionError):
        R.inv(x)


def test_ring_spec_parsing():
    assert FiniteLocalRing.from_spec("Z/9").kind == "Z/l^m"
    assert FiniteLocalRing.from_spec("GF(25)").spec == "F_25"
    assert FiniteLocalRing.from_spec("F_5^2").size == 25
    assert FiniteLocalRing.from_spec("GR(9,2)").kind == "galois"
    with pytest.raises(ValueError):
        FiniteLocalRing.from_spec("Z/12")
    with pytest.raises(ValueError):
        FiniteLocalRing.from_spec("Q")


def test_matrix_inverse_and_det():
    A = MatrixAlgebra(FiniteLocalRing.from_spec("Z/27"), 3)
    rng = np.random.default_rng(5)
    for _ in range(10):
        M = A.random_invertible(rng)
        assert A.mul(M, A.inverse(M)) == A.identity
        N = A.random_invertible(rng)
        assert A.det(A.mul(M, N)) == A.ring.mul(A.det(M), A.det(N))


# ---- groups and representations


def s3_standard():
    R = FiniteLocalRing.from_spec("F_7")
    A = MatrixAlgebra(R, 2)
    S3 = FiniteGroup.permutations([(1, 0, 2), (1, 2, 0)])
    m1 = R.neg(1)
    return S3, A, GroupRep(S3, A, [(m1, 1, 0, 1), (0, m1, 1, m1)])


def test_closure_and_homomorphism_check():
    S3, A, rho = s3_standard()
    assert len(S3) == 6
    assert [rho.trace(g) for g in S3.elements].count(A.ring.scalar(2)) == 1
    with pytest.raises(ValueError, match="homomorphism"):
        GroupRep(S3, A, [A.identity, (0, 1, 1, 0)])


def test_closure_cap():
    R = FiniteLocalRing.from_spec("F_7")
    with pytest.raises(ClosureOverflow):
        FiniteGroup.matrices(MatrixAlgebra(R, 2), G.gl2_generators(R), cap=1000)


def test_span_examples():
    S3, _, rho = s3_standard()
    assert span_check(rho, rho, list(S3)).spans
    assert not span_check(rho, rho, [S3.identity]).spans
    with pytest.raises(ValueError):
        span_check(rho, rho, [])


def test_class_representatives_do_not_span_an_irreducible_image():
    # the image spans all of M_2(F_7) (dimension 4); three elements cannot
    S3, _, rho = s3_standard()
    reps = [S3.identity, (1, 0, 2), (1, 2, 0)]
    cert = span_check(rho, rho, reps)
    assert not cert.spans
    assert cert.residue_rank_full == 4 and cert.residue_rank_frob == 3
    # one more transposition suffices
    assert span_check(rho, rho, reps + [(0, 2, 1)]).spans


def test_trace_conclusion_conjugate():
    S3, A, rho = s3_standard()
    rho2 = rho.conjugate((1, 2, 3, 4))
    r = trace_conclusion_check(rho, rho2, list(S3))
    assert r.passed and r.actual == 0


def test_trace_conclusion_over_z9():
    R = FiniteLocalRing.from_spec("Z/9")
    A = MatrixAlgebra(R, 2)
    gens = [(1, 1, 0, 1), (R.neg(1), 0, 3, 1)]
    H = FiniteGroup.matrices(A, gens)
    rho = GroupRep.defining(H, A)
    P = (1, 3, 0, 1)  # trivial mod 3
    rho2 = rho.conjugate(P)
    basis = span_check(rho, rho2, list(H)).basis
    r = trace_conclusion_check(rho, rho2, basis)
    assert r.status == "pass"


def test_sign_twist_of_standard_rep_is_isomorphic():
    S3, A, rho = s3_standard()
    R = A.ring
    sign = {(1, 0, 2): R.neg(1), (1, 2, 0): 1}
    tw = rho.twist([sign[g] for g in S3.generators])
    assert trace_conclusion_check(rho, tw, list(S3)).passed
    kernel = [S3.identity, (1, 2, 0), (2, 0, 1)]
    r = trace_conclusion_check(rho, tw, kernel)
    assert r.status == "skip" and r.skipped == "set not spanning"


def test_differing_traces_are_skipped():
    S3, A, rho = s3_standard()
    m1 = A.ring.neg(1)
    split = GroupRep(S3, A, [(m1, 0, 0, 1), A.identity])
    r = trace_conclusion_check(rho, split, list(S3))
    assert r.status == "skip" and r.skipped == "traces differ on frob_set"


def test_module_size_sees_past_the_residue_field():
    # over Z/9 the residue span can be full while the R-span is not
    R = FiniteLocalRing.from_spec("Z/9")
    rows = [[1, 0], [0, 3]]
    vals, _ = G._smith_valuations(R, rows)
    assert sorted(vals) == [0, 1]
    assert G.module_size_log(R, vals) == 3


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(["F_5", "Z/9", "Z/8", "F_7"]))
def test_span_is_monotone(seed, spec):
    rng = np.random.default_rng(seed)
    rho, rho2, frob, _ = G.random_faltings_serre_instance(rng, FiniteLocalRing.from_spec(spec), max_order=500)
    small = span_check(rho, rho2, frob)
    extra = [rho.group.elements[int(i)] for i in rng.integers(0, len(rho.group), 3)]
    big = span_check(rho, rho2, frob + extra)
    assert big.size_log_frob >= small.size_log_frob
    if small.spans:
        assert big.spans


def test_random_instances_never_contradict():
    rng = np.random.default_rng(11)
    counts = {"pass": 0, "skip": 0}
    for i in range(30):
        spec = ["F_5", "Z/9", "Z/4", "Z/27", "F_9"][i % 5]
        rho, rho2, frob, _ = G.random_faltings_serre_instance(rng, FiniteLocalRing.from_spec(spec))
        r = trace_conclusion_check(rho, rho2, frob)
        assert r.status != "fail"
        counts[r.status] += 1
    assert counts["pass"] > 0


# ---- Dickson


def classify(spec, gens):
    return dickson_classify(gens, FiniteLocalRing.from_spec(spec))


def test_sl2_f5_inside_gl2_f25():
    R = FiniteLocalRing.from_spec("F_25")
    c = dickson_classify(G.sl2_generators(R, 1), R)
    assert (c.tag, c.q0, c.order) == ("ContainsSL2", 5, 60)


def test_upper_triangular_is_reducible():
    R = FiniteLocalRing.from_spec("F_7")
    assert dickson_classify(G.borel_generators(R), R).tag == "Reducible"


def test_split_normalizer_is_dihedral():
    R = FiniteLocalRing.from_spec("F_7")
    c = dickson_classify(G.split_normalizer_generators(R), R)
    assert c.tag == "Dihedral" and c.order == 12


@pytest.mark.parametrize("q", [5, 7, 9, 11, 13])
def test_full_gl2(q):
    R = FiniteLocalRing.from_spec(f"F_{q}")
    gens = G.gl2_generators(R)
    c = dickson_classify(gens, R)
    assert c.tag == "ContainsSL2" and c.q0 == q
    A = MatrixAlgebra(R, 2)
    H = FiniteGroup.matrices(A, gens)
    S = FiniteGroup.matrices(A, G.sl2_generators(R))
    assert len(H) == (q * q - 1) * (q * q - q)
    assert all(s in H for s in S)


@pytest.mark.parametrize("k,name", [(3, "A4"), (4, "S4"), (5, "A5")])
def test_exceptional_groups(k, name):
    R = FiniteLocalRing.from_spec("F_49")
    c = dickson_classify(G.triangle_generators(R, k), R)
    assert c.tag == "SmallExceptional" and c.name == name


def test_quadratic_extension_reducibility():
    # a split torus conjugated into F_q^2 eigenvalues: irreducible over F_7, reducible over F_49
    R = FiniteLocalRing.from_spec("F_7")
    r, _ = G.nonsplit_normalizer_generators(R)
    assert not G.has_common_eigenline([(1, 1, 0, 1), (1, 0, 1, 1)], R)
    assert G.has_common_eigenline([r], R)
    assert dickson_classify([r], R).tag == "Reducible"


def test_dickson_is_conjugation_invariant():
    rng = np.random.default_rng(7)
    for spec, gens in [
        ("F_7", G.split_normalizer_generators(FiniteLocalRing.from_spec("F_7"))),
        ("F_25", G.sl2_generators(FiniteLocalRing.from_spec("F_25"), 1)),
        ("F_7", G.triangle_generators(FiniteLocalRing.from_spec("F_7"), 4)),
    ]:
        R = FiniteLocalRing.from_spec(spec)
        A = MatrixAlgebra(R, 2)
        base = dickson_classify(gens, R)
        for _ in range(20):
            g = A.random_invertible(rng)
            gi = A.inverse(g)
            conj = [A.mul(A.mul(g, x), gi) for x in gens]
            assert dickson_classify(conj, R) == base


def test_curated_subgroups_match_oracle():
    seen = set()
    for label, R, gens in G.curated_subgroups():
        c = dickson_classify(gens, R)
        assert c == G.dickson_oracle(gens, R), label
        seen.add(c.tag)
    assert seen == {"ContainsSL2", "Reducible", "Dihedral", "SmallExceptional"}


def test_dickson_rejects_rings_it_cannot_handle():
    with pytest.raises(ValueError):
        dickson_classify([(1, 1, 0, 1)], FiniteLocalRing.from_spec("Z/9"))


# ---- Taylor-Wiles


def test_sl2_f5_is_perfect_exhaustively():
    R = FiniteLocalRing.from_spec("F_5")
    S = FiniteGroup.matrices(MatrixAlgebra(R, 2), G.sl2_generators(R))
    assert len(S) == 120
    assert len(S.derived_subgroup_exhaustive()) == 120
    assert S.is_perfect()


def test_taylor_wiles_positive_cases():
    for spec in ("F_5", "F_7", "F_25"):
        R = FiniteLocalRing.from_spec(spec)
        assert taylor_wiles_check(G.sl2_generators(R, 1), R)
    R = FiniteLocalRing.from_spec("F_7")
    assert taylor_wiles_check(G.gl2_generators(R), R)


def test_taylor_wiles_custom_character():
    R = FiniteLocalRing.from_spec("F_7")
    A = MatrixAlgebra(R, 2)
    square_det = lambda m: R.mul(A.det(m), A.det(m))  # noqa: E731
    assert taylor_wiles_check(G.gl2_generators(R), R, square_det)


def test_taylor_wiles_precondition():
    R = FiniteLocalRing.from_spec("F_7")
    with pytest.raises(PreconditionError):
        taylor_wiles_check(G.borel_generators(R), R)


def test_solvable_groups():
    S4 = FiniteGroup.permutations([(1, 0, 2, 3), (1, 2, 3, 0)])
    assert len(S4) == 24
    assert S4.derived_series() == [24, 12, 4, 1]
    assert S4.derived_series(exhaustive=True) == [24, 12, 4, 1]
    A5 = FiniteGroup.permutations([(1, 2, 0, 3, 4), (0, 1, 3, 4, 2)])
    assert len(A5) == 60 and A5.is_perfect()
