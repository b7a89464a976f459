import numpy as np
import pytest

from reparam import param_tree as pt
from reparam._errors import DomainError, ParseError, ShapeError


class TestSize:
    def test_student_style_spec(self):
        spec = pt.NamedTuple(
            mu=pt.Real(shape=3), Sigma=pt.MatrixSymPosDef(dim=3), df=pt.RealPositive()
        )
        assert spec.size == 10
        assert pt.size(spec) == 10

    def test_shaped_simplex(self):
        assert pt.VectorSimplex(dim=2, shape=(5,)).size == 10

    def test_corr_dim1_empty(self):
        assert pt.MatrixCorrelation(dim=1).size == 0

    def test_tuple_sum(self):
        spec = pt.Tuple(pt.Real(), pt.VectorBall(dim=3), pt.MatrixSym(dim=2))
        assert spec.size == 1 + 3 + 3


class TestForward:
    def test_tuple_anchor(self):
        spec = pt.Tuple(pt.RealBounded01(), pt.RealPositive())
        y = pt.reals1d_to_params(spec, np.array([-0.5, 0.5]))
        assert y[0] == pytest.approx(0.37754068, abs=1e-6)
        assert y[1] == pytest.approx(0.97407699, abs=1e-6)

    def test_spd_anchor(self):
        spec = pt.MatrixSymPosDef(dim=3)
        M = pt.reals1d_to_params(spec, np.array([-0.5, 0.5, 1.0, -1.0, 0.0, 1.5]))
        expect = np.array(
            [
                [0.22474898, -0.33522305, 0.0],
                [-0.33522305, 0.9744129, 0.5964979],
                [0.0, 0.5964979, 1.3248855],
            ]
        )
        np.testing.assert_allclose(M, expect, atol=2e-3)

    def test_realpos_scalar_accepted(self):
        spec = pt.RealPositive()
        x = pt.params_to_reals1d(spec, 0.3)
        assert x.shape == (1,)
        assert x[0] == pytest.approx(-1.05022561, abs=1e-6)
        assert pt.reals1d_to_params(spec, x) == pytest.approx(0.3, abs=1e-12)

    def test_scalar_theta_accepted_for_size_one(self):
        assert pt.reals1d_to_params(pt.Real(), 1.5) == 1.5

    def test_namedtuple_field_order(self):
        a = pt.NamedTuple(u=pt.Real(), v=pt.RealPositive())
        b = pt.NamedTuple(v=pt.RealPositive(), u=pt.Real())
        theta = np.array([0.7, -0.2])
        pa = pt.reals1d_to_params(a, theta)
        pb = pt.reals1d_to_params(b, theta)
        assert pa.u == theta[0]
        assert pb.u == pytest.approx(float(pt.reals1d_to_params(pt.Real(), theta[1])))

    def test_shaped_leaf_layout(self):
        spec = pt.Real(shape=(2, 3))
        theta = np.arange(6.0)
        out = pt.reals1d_to_params(spec, theta)
        assert out.shape == (2, 3)
        np.testing.assert_array_equal(out.reshape(-1), theta)

    def test_loc_scale(self):
        spec = pt.Real(loc=2.0, scale=3.0)
        assert pt.reals1d_to_params(spec, np.array([1.0])) == 5.0
        np.testing.assert_allclose(pt.params_to_reals1d(spec, 5.0), [1.0])

    def test_theta_errors(self):
        spec = pt.Tuple(pt.Real(), pt.Real())
        with pytest.raises(ShapeError):
            pt.reals1d_to_params(spec, np.zeros(3))
        with pytest.raises(DomainError):
            pt.reals1d_to_params(spec, np.array([0.0, np.inf]))

    def test_error_paths_are_labelled(self):
        spec = pt.NamedTuple(w=pt.VectorSimplex(dim=2), t=pt.Real())
        bad = pt.reals1d_to_params(spec, np.zeros(3))._replace(
            w=np.array([0.5, 0.2, 0.2])
        )
        with pytest.raises(DomainError, match=r"at \.w"):
            pt.params_to_reals1d(spec, bad)

    def test_tuple_error_path_index(self):
        spec = pt.Tuple(pt.Real(), pt.RealPositive())
        with pytest.raises(DomainError, match=r"at \[1\]"):
            pt.params_to_reals1d(spec, (0.0, -1.0))


class TestRoundTrip:
    CASES = [
        pt.Real(),
        pt.Real(shape=(2, 2), loc=1.0, scale=0.5),
        pt.RealPositive(scale=0.1),
        pt.RealNegative(),
        pt.RealLowerBounded(a=-7.0, scale=4.0),
        pt.RealUpperBounded(a=3.0),
        pt.RealBounded01(shape=3),
        pt.RealBounded(a=0.0, b=12.0),
        pt.VectorSimplex(dim=3, shape=(2,)),
        pt.VectorSphere(dim=4),
        pt.VectorHalfSphere(dim=2, radius=2.0),
        pt.VectorBall(dim=2),
        pt.MatrixDiag(dim=3),
        pt.MatrixDiagPosDef(dim=2, scale=0.5),
        pt.MatrixSym(dim=3),
        pt.MatrixSymPosDef(dim=3),
        pt.MatrixCorrelation(dim=4),
        pt.Tuple(pt.Real(), pt.VectorSimplex(dim=2)),
        pt.NamedTuple(
            mu=pt.Real(shape=3), Sigma=pt.MatrixSymPosDef(dim=3), df=pt.RealPositive()
        ),
    ]

    @pytest.mark.parametrize("spec", CASES, ids=[s.render() for s in CASES])
    def test_roundtrip(self, spec):
        rng = np.random.default_rng(42)
        for _ in range(50):
            theta = rng.normal(size=spec.size)
            back = pt.params_to_reals1d(spec, pt.reals1d_to_params(spec, theta))
            assert back.shape == (spec.size,)
            if spec.size:
                assert np.max(np.abs(back - theta)) <= 1e-7

    def test_random_corpus(self):
        rng = np.random.default_rng(7)
        leaves = [
            lambda: pt.Real(shape=tuple(rng.integers(1, 4, rng.integers(0, 3)))),
            lambda: pt.RealPositive(),
            lambda: pt.RealNegative(),
            lambda: pt.RealLowerBounded(a=float(rng.normal())),
            lambda: pt.RealUpperBounded(a=float(rng.normal())),
            lambda: pt.RealBounded01(),
            lambda: pt.RealBounded(a=-1.0, b=3.5),
            lambda: pt.VectorSimplex(dim=int(rng.integers(1, 6))),
            lambda: pt.VectorSphere(dim=int(rng.integers(1, 6))),
            lambda: pt.VectorHalfSphere(dim=int(rng.integers(1, 6))),
            lambda: pt.VectorBall(dim=int(rng.integers(2, 6))),
            lambda: pt.MatrixDiag(dim=int(rng.integers(1, 6))),
            lambda: pt.MatrixDiagPosDef(dim=int(rng.integers(1, 6))),
            lambda: pt.MatrixSym(dim=int(rng.integers(1, 6))),
            lambda: pt.MatrixSymPosDef(dim=int(rng.integers(1, 6))),
            lambda: pt.MatrixCorrelation(dim=int(rng.integers(1, 6))),
        ]

        def random_spec(depth):
            if depth >= 3 or rng.uniform() < 0.6:
                return leaves[rng.integers(len(leaves))]()
            kids = [random_spec(depth + 1) for _ in range(rng.integers(1, 4))]
            if rng.uniform() < 0.5:
                return pt.Tuple(*kids)
            return pt.NamedTuple(**{f"f{i}": k for i, k in enumerate(kids)})

        for _ in range(40):
            spec = random_spec(0)
            for _ in range(25):
                theta = rng.normal(size=spec.size)
                back = pt.params_to_reals1d(spec, pt.reals1d_to_params(spec, theta))
                assert back.shape[0] == spec.size
                if spec.size:
                    assert np.max(np.abs(back - theta)) <= 1e-7


class TestGrammar:
    def test_student_style(self):
        spec = pt.parse_spec("named(mu=real(shape=3), Sigma=spd(3), df=realpos())")
        assert spec.size == 10
        assert isinstance(spec, pt.NamedTuple)
        assert [n for n, _ in spec.fields] == ["mu", "Sigma", "df"]

    def test_simplex_positional(self):
        spec = pt.parse_spec("simplex(3)")
        assert spec == pt.VectorSimplex(dim=3)
        assert spec.size == 3

    def test_case_and_whitespace_insensitive(self):
        a = pt.parse_spec("  Tuple( REAL() ,Bounded( A=0, B=1 ) ) ")
        b = pt.parse_spec("tuple(real(),bounded(a=0,b=1))")
        assert a == b

    def test_semantic_error(self):
        with pytest.raises(DomainError):
            pt.parse_spec("bounded(a=2, b=1)")

    def test_parse_error_has_position(self):
        with pytest.raises(ParseError) as exc:
            pt.parse_spec("simplex(oops")
        assert exc.value.position > 0

    def test_unknown_kind(self):
        with pytest.raises(ParseError):
            pt.parse_spec("mystery(3)")

    def test_trailing_junk(self):
        with pytest.raises(ParseError):
            pt.parse_spec("real() real()")

    def test_empty(self):
        with pytest.raises(ParseError):
            pt.parse_spec("")

    def test_duplicate_field(self):
        with pytest.raises(ParseError):
            pt.parse_spec("named(a=real(), a=real())")

    def test_ball_dim1_semantic(self):
        with pytest.raises(DomainError):
            pt.parse_spec("ball(1)")


class TestRender:
    CASES = [
        "real()",
        "real(shape=(3,))",
        "real(shape=(2,3),loc=1.5,scale=0.25)",
        "realpos(scale=0.1)",
        "reallower(a=-7.0,scale=4.0)",
        "bounded(a=0.0,b=12.0)",
        "simplex(4)",
        "sphere(3,radius=2.0)",
        "ball(2)",
        "spd(3,scale=2.0)",
        "corr(5)",
        "tuple(real(), simplex(2))",
        "named(mu=real(shape=3), Sigma=spd(3), df=realpos())",
    ]

    @pytest.mark.parametrize("text", CASES)
    def test_parse_render_fixpoint(self, text):
        spec = pt.parse_spec(text)
        canon = pt.render(spec)
        assert pt.parse_spec(canon) == spec
        # canonical form is itself a fixpoint
        assert pt.render(pt.parse_spec(canon)) == canon

    def test_singleton_shape_renders_with_comma(self):
        assert "shape=(3,)" in pt.render(pt.Real(shape=3))
