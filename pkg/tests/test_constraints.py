from src.core.models.forms import FormClass
from src.services.linearize import audit, generate, readout

from conftest import make_root


def _audit(root, form):
    return audit(readout(generate(root, form), form), root)


class TestAudit:
    def test_root_equation_identifications(self, polar_root, mixed_root):
        for root in (polar_root, mixed_root):
            report = _audit(root, FormClass.ROOT8)
            assert report.transcribed_ok
            assert report.agrees_with(True)

    def test_third_order_identifications(self, mixed_root):
        report = _audit(mixed_root, FormClass.THIRD14)
        assert report.entries
        assert report.transcribed_ok
        assert report.diagnostics() == []

    def test_wrong_root_fails(self, polar_root):
        other = make_root("x", "0", "1/x", "0")
        report = audit(readout(generate(polar_root, FormClass.ROOT8), FormClass.ROOT8), other)
        assert not report.transcribed_ok
        assert report.diagnostics()
        assert not report.agrees_with(True)

    def test_zero_leading_coefficient_skips_divisions(self, exponential_root):
        report = _audit(exponential_root, FormClass.FOURTH21)
        skipped = [e for e in report.entries if e.skipped]
        assert skipped
        assert all(e not in report.failing for e in skipped)
        assert all(not e.holds for e in skipped)
