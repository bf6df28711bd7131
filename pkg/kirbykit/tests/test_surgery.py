import pytest

from kirbykit import surgery
from kirbykit.errors import (
    IllegalMoveError,
    MarkingError,
    UnsupportedKnotError,
    ValidationError,
)
from kirbykit.handlebody import Handle, HandleStructure, invariants
from kirbykit.laurent import LaurentPoly, Monomial
from kirbykit.moves import MoveScript, verify_script
from kirbykit.resources import corpus_file
from kirbykit.surgery import ComplementPresentation, SWInvariant, TorusMarking

from .utils import (
    assert_invariants_equal,
    assert_structures_equal,
    load_corpus,
    torus_structure,
)


@pytest.fixture
def k3():
    return surgery.load_sw_catalog()["K3"]


class TestTorusMarking:
    @pytest.mark.parametrize(
        "ids",
        (
            pytest.param("a, b, tau", id="str"),
            pytest.param(["a", "b", "tau"], id="list"),
            pytest.param(
                {"dotted_a": "a", "dotted_b": "b", "framed_t": "tau"}, id="dict"
            ),
            pytest.param(TorusMarking("a", "b", "tau"), id="marking"),
        ),
    )
    def test_from_ids(self, ids):
        marking = TorusMarking.from_ids(ids)

        assert marking == TorusMarking("a", "b", "tau")
        assert not marking.has_cusp
        assert marking.to_dict() == {
            "dotted_a": "a",
            "dotted_b": "b",
            "framed_t": "tau",
        }

    def test_cusp_handles(self):
        marking = TorusMarking.from_ids("a,b,tau,gamma,delta")

        assert marking.has_cusp
        assert marking.ids == ("a", "b", "tau", "gamma", "delta")
        assert marking.to_dict()["cusp_handles"] == ["gamma", "delta"]

    @pytest.mark.parametrize(
        "ids",
        (
            pytest.param(["a", "b"], id="too few"),
            pytest.param(list("abcdef"), id="too many"),
            pytest.param({"dotted_a": "a", "dotted_b": "b"}, id="missing field"),
            pytest.param(
                {"dotted_a": "a", "dotted_b": "b", "framed_t": "t", "x": 1},
                id="unknown field",
            ),
        ),
    )
    def test_from_ids_invalid(self, ids):
        with pytest.raises(MarkingError):
            TorusMarking.from_ids(ids)


class TestMarkTorus:
    @pytest.mark.parametrize(
        ["name", "cusp_handles"],
        (
            pytest.param("torus.kby", (), id="torus"),
            pytest.param("cusp_nbhd.kby", ("gamma", "delta"), id="cusp"),
            pytest.param("fishtail_nbhd.kby", ("gamma",), id="fishtail"),
        ),
    )
    def test_stored_marking(self, name, cusp_handles):
        marking = surgery.mark_torus(load_corpus(name))

        assert marking.dotted_a == "a"
        assert marking.framed_t == "tau"
        assert marking.cusp_handles == cusp_handles

    def test_explicit_ids(self):
        X = load_corpus("cusp_nbhd.kby").replace(marking=None)

        marking = surgery.mark_torus(X, "a,b,tau,gamma")
        assert marking.cusp_handles == ("gamma",)

    def test_no_marking(self):
        X = torus_structure(marking=None)

        with pytest.raises(MarkingError, match="carries no torus marking"):
            surgery.mark_torus(X)

    @pytest.mark.parametrize(
        ["name", "ids", "match"],
        (
            pytest.param("torus.kby", "a,b,x", "no such handle", id="missing"),
            pytest.param("torus.kby", "a,a,tau", "ids repeat", id="repeat"),
            pytest.param(
                "cusp_star.kby", "a,b,tau", "expected a plain dotted circle", id="slice"
            ),
            pytest.param(
                "cusp_star.kby", "a,b,tau", "runs over a are not asserted", id="runs"
            ),
            pytest.param("torus.kby", "a,tau,b", "expected a framed", id="dotted t"),
            pytest.param(
                "cusp_nbhd.kby",
                "a,b,tau,gamma,tau",
                "ids repeat",
                id="cusp repeat",
            ),
            pytest.param(
                "cusp_nbhd.kby", "b,a,gamma,tau", "framing 0, expected -1", id="cusp"
            ),
        ),
    )
    def test_invalid(self, name, ids, match):
        X = load_corpus(name)

        with pytest.raises(MarkingError, match=match) as excinfo:
            surgery.mark_torus(X, ids)

        assert str(excinfo.value).startswith("Cannot mark torus:")

    def test_framed_torus_handle(self):
        X = HandleStructure(
            [
                Handle(id="a", kind="dotted"),
                Handle(id="b", kind="dotted"),
                Handle(
                    id="tau",
                    kind="framed",
                    framing=1,
                    links={"a": 1},
                    geometric_runs={"a": 3, "b": 2},
                ),
            ]
        )

        with pytest.raises(MarkingError) as excinfo:
            surgery.mark_torus(X, "a,b,tau")

        message = str(excinfo.value)
        assert "framing 1, expected 0" in message
        assert "links a 1 times, expected 0" in message
        assert "runs 3 times over a, expected 2" in message


class TestPresentations:
    def test_stored(self):
        stored = surgery.presentations()

        assert {"left-trefoil", "right-trefoil"} <= set(stored)
        assert all(presentation.genus == 2 for presentation in stored.values())

    @pytest.mark.parametrize(
        ["name", "expected"],
        (
            pytest.param("trefoil", "left-trefoil", id="alias"),
            pytest.param("3_1", "left-trefoil", id="rolfsen"),
            pytest.param("right-trefoil", "right-trefoil", id="mirror"),
        ),
    )
    def test_complement_presentation(self, name, expected):
        assert surgery.complement_presentation(name).knot == expected

    @pytest.mark.parametrize(
        "name",
        (
            pytest.param("figure-eight", id="no presentation"),
            pytest.param("7_4", id="unknown"),
        ),
    )
    def test_unsupported(self, name):
        with pytest.raises(UnsupportedKnotError):
            surgery.complement_presentation(name)


class TestKnotSurgeryDiagram:
    @pytest.mark.parametrize(
        ["name", "expected"],
        (
            pytest.param("torus.kby", "torus_star.kby", id="torus"),
            pytest.param("cusp_nbhd.kby", "cusp_star.kby", id="cusp"),
            pytest.param("fishtail_nbhd.kby", "fishtail_star.kby", id="fishtail"),
        ),
    )
    def test_corpus(self, name, expected):
        X = load_corpus(name)
        actual = surgery.knot_surgery_diagram(X, None, "trefoil")

        assert actual == load_corpus(expected)
        assert_structures_equal(actual, load_corpus(expected))
        assert actual.name == f"{X.name}_star"
        assert actual.marking is None

    @pytest.mark.parametrize("knot", ["left-trefoil", "right-trefoil"])
    def test_preserves_invariants(self, knot):
        X = load_corpus("cusp_nbhd.kby")
        actual = surgery.knot_surgery_diagram(X, X.marking, knot)

        assert_invariants_equal(invariants(actual), invariants(X))
        assert actual["a"].kind == "slice"
        assert actual["a"].knot == f"{knot}#-{knot}"
        assert actual["tau"].geometric_runs == {"alpha'": 2, "b": 2}
        assert actual["gamma"].links == {"a": 1}

    def test_unsupported_knot(self):
        with pytest.raises(UnsupportedKnotError, match="no complement presentation"):
            surgery.knot_surgery_diagram(torus_structure(), None, "figure-eight")

    def test_unsupported_genus(self):
        presentation = ComplementPresentation(
            knot="left-trefoil", core_circles=("alpha",), template={}
        )
        with pytest.raises(UnsupportedKnotError, match="genus 1"):
            surgery.knot_surgery_diagram(torus_structure(), None, presentation)

    def test_id_collision(self):
        X = torus_structure()
        X = X.replace(
            handles=X.handles + (Handle(id="h_beta", kind="framed", framing=1),)
        )

        with pytest.raises(ValidationError, match="already taken"):
            surgery.knot_surgery_diagram(X, None, "trefoil")

    def test_invalid_marking(self):
        with pytest.raises(MarkingError):
            surgery.knot_surgery_diagram(load_corpus("cusp.kby"), "h,h,h", "trefoil")

    def test_move(self):
        script = MoveScript.load(corpus_file("figure9_to_figure7.script"))
        certificate = verify_script(script.start, script)

        assert "tau marks a T²×B²" in certificate.verified
        assert any("c-embedded" in condition for condition in certificate.asserted)

    def test_move_without_marking(self):
        X = torus_structure(marking=None)

        with pytest.raises(IllegalMoveError, match="knot_surgery"):
            surgery.knot_surgery(X, "trefoil")


class TestReverseScript:
    def test_moves(self):
        moves = surgery.reverse_script("a,b,tau", "trefoil")

        assert [move["op"] for move in moves] == [
            "surger_dot",
            "cancel_12",
            "cancel_23",
            "add_dot",
        ]
        assert moves[1] == {"op": "cancel_12", "dotted": "alpha'", "framed": "h_alpha"}

    @pytest.mark.parametrize(
        "name", ["torus.kby", "cusp_nbhd.kby", "fishtail_nbhd.kby"]
    )
    def test_round_trip(self, name):
        X = load_corpus(name)
        star = surgery.knot_surgery_diagram(X, None, "trefoil")

        certificate = verify_script(
            star, surgery.reverse_script(X.marking, "trefoil"), expected=invariants(X)
        )

        assert certificate.final == invariants(X)
        assert "h_beta is an unknot" in certificate.asserted


class TestUndoDualHandle:
    @pytest.mark.parametrize(
        ["name", "expected"],
        (
            pytest.param("cusp_nbhd.kby", "fishtail_nbhd.kby", id="cusp"),
            pytest.param("cusp_star.kby", "fishtail_star.kby", id="cusp star"),
        ),
    )
    def test_fishtail(self, name, expected):
        actual = surgery.undo_dual_handle(load_corpus(name), "delta")

        assert actual == load_corpus(expected)

    def test_marking(self):
        actual = surgery.undo_dual_handle(load_corpus("cusp_nbhd.kby"), "delta")

        assert actual.marking["cusp_handles"] == ["gamma"]
        assert surgery.mark_torus(actual).cusp_handles == ("gamma",)

    def test_twice(self):
        X = surgery.undo_dual_handle(load_corpus("cusp_nbhd.kby"), "delta")

        with pytest.raises(IllegalMoveError, match="no handle named 'delta'"):
            surgery.undo_dual_handle(X, "delta")

    def test_not_a_cusp_handle(self):
        with pytest.raises(IllegalMoveError, match="-1-framed"):
            surgery.undo_dual_handle(load_corpus("cusp_nbhd.kby"), "tau")

    @pytest.mark.parametrize(
        "name", ["cusp_to_fishtail.script", "cusp_star_to_fishtail_star.script"]
    )
    def test_scripts(self, name):
        script = MoveScript.load(corpus_file(name))
        certificate = verify_script(script.start, script)

        assert certificate.final.chi == 1
        assert str(certificate.final.boundary_h1) == "Z^2"


class TestSeibergWitten:
    @pytest.mark.parametrize(
        ["e", "sigma", "expected"],
        (
            pytest.param(24, -16, 2, id="K3"),
            pytest.param(36, -24, 3, id="E(3)"),
            pytest.param(3, 1, 1, id="CP2"),
        ),
    )
    def test_epsilon_of(self, e, sigma, expected):
        assert surgery.epsilon_of(e, sigma) == expected

    def test_epsilon_of_invalid(self):
        with pytest.raises(ValidationError, match="not divisible by 4"):
            surgery.epsilon_of(3, 0)

    def test_catalog(self):
        catalog = surgery.load_sw_catalog()

        assert sorted(catalog) == ["E(3)", "E(4)", "K3"]
        assert catalog["E(3)"].basis == ("F",)
        assert catalog["E(4)"].basic_classes == [(-2,), (0,), (2,)]

    def test_catalog_invalid(self, tmp_path):
        path = tmp_path / "catalog.json"
        path.write_text(
            '{"manifolds": [{"manifold": "X", "epsilon": 2, "sw": "exp(T)"}]}'
        )

        with pytest.raises(ValidationError, match="entry 0"):
            surgery.load_sw_catalog(path)

    @pytest.mark.parametrize(
        ["knot", "expected"],
        (
            pytest.param("trefoil", "exp(2T) - 1 + exp(-2T)", id="trefoil"),
            pytest.param("figure-eight", "-exp(2T) + 3 - exp(-2T)", id="figure-eight"),
        ),
    )
    def test_knot_surgery(self, k3, knot, expected):
        result = surgery.sw_knot_surgery(k3, "T", knot)

        assert surgery.format_sw(result) == expected
        assert result.epsilon == k3.epsilon
        assert result.manifold == f"K3_{knot}"
        assert surgery.sw_symmetry_check(result)

    def test_basic_classes(self, k3):
        result = surgery.sw_knot_surgery(k3, "T", "trefoil")

        assert result.basic_classes == [(-2,), (0,), (2,)]

    def test_odd_epsilon(self):
        e3 = surgery.load_sw_catalog()["E(3)"]
        result = surgery.sw_knot_surgery(e3, "F", "trefoil")

        assert surgery.format_sw(result) == (
            "exp(3F) - 2*exp(F) + 2*exp(-F) - exp(-3F)"
        )
        assert surgery.sw_symmetry_check(result)

    def test_torus_class_vector(self, k3):
        result = surgery.sw_knot_surgery(k3, [2], "trefoil")

        assert surgery.format_sw(result) == "exp(4T) - 1 + exp(-4T)"

    @pytest.mark.parametrize(
        ["torus_class", "match"],
        (
            pytest.param("F", "not part of the basis", id="unknown"),
            pytest.param([0], "nonzero", id="zero"),
            pytest.param([1, 0], "does not match", id="length"),
        ),
    )
    def test_torus_class_invalid(self, k3, torus_class, match):
        with pytest.raises(ValidationError, match=match):
            surgery.sw_knot_surgery(k3, torus_class, "trefoil")

    @pytest.mark.parametrize(
        "delta",
        (
            pytest.param("t + 1", id="asymmetric"),
            pytest.param("t + 1 + t^-1", id="normalization"),
            pytest.param("s - 1 + s^-1", id="variable"),
        ),
    )
    def test_delta_invalid(self, k3, delta):
        with pytest.raises(ValidationError):
            surgery.sw_knot_surgery(k3, "T", LaurentPoly.parse(delta))

    def test_iterated(self, k3):
        iterated = surgery.sw_iterated_surgery(k3, "T", ["trefoil", "trefoil"])
        summed = surgery.sw_knot_surgery(k3, "T", "trefoil#trefoil")

        assert iterated.poly == summed.poly
        assert surgery.format_sw(iterated) == (
            "exp(4T) - 2*exp(2T) + 3 - 2*exp(-2T) + exp(-4T)"
        )

    def test_is_fake_pair(self, k3):
        trefoil = surgery.sw_knot_surgery(k3, "T", "trefoil")
        figure_eight = surgery.sw_knot_surgery(k3, "T", "figure-eight")

        assert surgery.is_fake_pair(trefoil, figure_eight)
        assert surgery.is_fake_pair(k3, trefoil)
        assert not surgery.is_fake_pair(trefoil, surgery.sw_knot_surgery(k3, "T", "3_1"))

        with pytest.raises(ValidationError, match="differs"):
            surgery.is_fake_pair(k3, surgery.load_sw_catalog()["E(3)"])


class TestSWText:
    @pytest.mark.parametrize(
        ["text", "basis", "terms"],
        (
            pytest.param(
                "exp(2T) - 1 + exp(-2T)",
                ("T",),
                {Monomial(T=2): 1, Monomial(): -1, Monomial(T=-2): 1},
                id="symmetric",
            ),
            pytest.param(
                "2*exp(F) - exp(-F)",
                ("F",),
                {Monomial(F=1): 2, Monomial(F=-1): -1},
                id="coefficient",
            ),
            pytest.param(
                "exp(F + 2G) + exp(-F - 2G)",
                ("F", "G"),
                {Monomial(F=1, G=2): 1, Monomial(F=-1, G=-2): 1},
                id="two classes",
            ),
            pytest.param("3", ("T",), {Monomial(): 3}, id="constant"),
        ),
    )
    def test_parse(self, text, basis, terms):
        assert surgery.parse_sw(text, basis) == LaurentPoly(terms)

    @pytest.mark.parametrize(
        ["text", "match"],
        (
            pytest.param("exp(x)", "unknown classes", id="unknown class"),
            pytest.param("exp(T + 1)", "not exp of a class", id="affine"),
            pytest.param("exp(T/2)", "integral", id="fraction"),
            pytest.param(2, "cannot parse", id="not text"),
        ),
    )
    def test_parse_invalid(self, text, match):
        with pytest.raises(ValidationError, match=match):
            surgery.parse_sw(text)

    def test_format(self):
        sw = SWInvariant(
            poly=surgery.parse_sw("exp(F + 2G) - exp(-F - 2G)", ("F", "G")),
            epsilon=1,
            basis=("F", "G"),
        )

        assert surgery.format_sw(sw) == "exp(F + 2G) - exp(-F - 2G)"
        assert surgery.format_sw(SWInvariant(LaurentPoly(), epsilon=0)) == "0"

    def test_dict(self, k3):
        result = surgery.sw_knot_surgery(k3, "T", "trefoil")

        assert result.to_dict() == {
            "manifold": "K3_trefoil",
            "basis": ["T"],
            "epsilon": 2,
            "sw": "exp(2T) - 1 + exp(-2T)",
        }
        assert SWInvariant.from_dict(result.to_dict()) == result

    @pytest.mark.parametrize(
        ["data", "match"],
        (
            pytest.param(
                {"epsilon": 2, "sw": "1", "genus": 1}, "unknown fields", id="unknown"
            ),
            pytest.param(
                {"epsilon": 3, "euler": 24, "signature": -16, "sw": "1"},
                "epsilon 3",
                id="epsilon",
            ),
            pytest.param({"epsilon": 2, "sw": "exp(T)"}, "not symmetric", id="asymmetric"),
        ),
    )
    def test_from_dict_invalid(self, data, match):
        with pytest.raises(ValidationError, match=match):
            SWInvariant.from_dict(data)
