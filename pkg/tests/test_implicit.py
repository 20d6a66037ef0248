import pytest

from src.core.parser import parse
from src.services.corpus import ImplicitRelation, load_corpus, verify_implicit_solution
from src.services.linearize import root_equation
from src.utils.exceptions import SingularRelation

FAMILY = "A*x*y^2 + B*x - y"


@pytest.fixture(scope="module")
def family():
    return ImplicitRelation.parse(FAMILY, ("A", "B"))


class TestImplicitSolution:
    @pytest.mark.parametrize("case_id", [11, 12])
    def test_family_solves_corpus_cases(self, family, case_id):
        case = load_corpus().case(case_id)
        assert verify_implicit_solution(family, case.jet)

    def test_family_solves_its_root_equation(self, family, mixed_root):
        assert verify_implicit_solution(family, root_equation(mixed_root))

    def test_family_does_not_solve_other_roots(self, family, polar_root):
        assert not verify_implicit_solution(family, root_equation(polar_root))

    def test_straight_line(self):
        assert verify_implicit_solution(ImplicitRelation.parse("y - x"), parse("y''"))

    def test_parabola_is_not_a_line(self):
        assert not verify_implicit_solution(ImplicitRelation.parse("y^2 - x"), parse("y''"))

    def test_relation_without_y(self):
        with pytest.raises(SingularRelation):
            verify_implicit_solution(ImplicitRelation.parse("x - 1"), parse("y''"))

    def test_relation_must_be_polynomial(self):
        with pytest.raises(ValueError):
            ImplicitRelation.parse("1/y - x")
