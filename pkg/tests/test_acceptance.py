"""The ten acceptance criteria at the default window (N=6, P=4)."""
import pytest

from vabkit.acceptance import CRITERIA, BatteryConfig, run_criterion

from conftest import ACCEPTANCE_LINES

CFG = BatteryConfig()


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[f"criterion_{c[0]:02d}" for c in CRITERIA])
def test_criterion(number):
    r = run_criterion(number, CFG)
    ACCEPTANCE_LINES.append(f"{r.line()}  ({r.seconds:.1f}s)")
    print(r.line(), r.detail)
    assert r.status == "pass", r.detail


def test_small_window_skips_rather_than_fails():
    small = BatteryConfig(N=1, P=2, levels=(1,))
    assert run_criterion(4, small).status == "skip"
    assert run_criterion(5, small).status == "skip"
    assert run_criterion(2, small).status == "pass"
