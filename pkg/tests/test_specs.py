import pytest

from grouper.errors import SpecParseError
from grouper.groups import are_isomorphic, standard_group
from grouper.specs import GroupSpecFile, parse_group_spec, spec_for_group


class TestFamilySpecs:
    def test_cyclic(self):
        spec = parse_group_spec("cyclic:4")
        assert spec.kind == "family"
        assert spec.build().order == 4

    def test_product(self):
        G = parse_group_spec("product:cyclic:2,cyclic:4").build()
        assert G.order == 8 and G.is_abelian

    def test_whitespace_insensitive(self):
        G = parse_group_spec("  dihedral:6  ").build()
        assert G.order == 6

    def test_named(self):
        G = parse_group_spec("name: MyGroup\ncyclic:6").build()
        assert G.name == "MyGroup" and G.order == 6

    def test_comments_ignored(self):
        G = parse_group_spec("# a comment\ncyclic:3 # trailing\n").build()
        assert G.order == 3


class TestPermutationSpecs:
    def test_single_three_cycle(self):
        G = parse_group_spec("(1 2 3)").build()
        assert G.order == 3

    def test_klein_from_two_generators(self):
        G = parse_group_spec("(1 2)(3 4)\n(1 3)(2 4)").build()
        assert G.order == 4
        assert set(G.element_orders.tolist()) == {1, 2}

    def test_commas_allowed(self):
        G = parse_group_spec("(1, 2, 3)(4, 5)").build()
        assert G.order == 6

    def test_mixed_degree_generators(self):
        G = parse_group_spec("(1 2)\n(1 2 3 4 5)").build()
        assert G.order == 120


class TestParseErrors:
    def test_empty(self):
        with pytest.raises(SpecParseError):
            parse_group_spec("   \n# only comments\n")

    def test_unknown_family(self):
        with pytest.raises(SpecParseError):
            parse_group_spec("borel:5")

    def test_repeated_point(self):
        with pytest.raises(SpecParseError) as err:
            parse_group_spec("(1 2)\n(3 3 4)")
        assert err.value.line == 2

    def test_nonpositive_point(self):
        with pytest.raises(SpecParseError):
            parse_group_spec("(0 1)")

    def test_multi_line_family(self):
        with pytest.raises(SpecParseError):
            parse_group_spec("cyclic:2\ncyclic:3")

    def test_duplicate_name(self):
        with pytest.raises(SpecParseError):
            parse_group_spec("name: A\nname: B\ncyclic:2")


class TestRoundTrip:
    @pytest.mark.parametrize("descriptor", ["symmetric:4", "alternating:4", "dihedral:8", "quaternion8"])
    def test_emit_then_parse(self, descriptor):
        G = standard_group(descriptor)
        spec = spec_for_group(G)
        rebuilt = parse_group_spec(spec.emit()).build()
        assert are_isomorphic(G, rebuilt)

    def test_family_emit(self):
        spec = GroupSpecFile("", "family", "cyclic:9")
        assert parse_group_spec(spec.emit()).build().order == 9
