import numpy as np
import pytest

from bicone import checks


@pytest.mark.parametrize("check", checks.CHECKS, ids=lambda c: f"{c.module}-{c.name.replace(' ', '_')}")
def test_check_suite_passes(check):
    passed, detail = check.run(np.random.default_rng(7))
    assert passed, detail


def test_run_checks_yields_every_suite():
    results = list(checks.run_checks(seed=3))
    assert [r[0] for r in results] == checks.CHECKS
    assert all(passed for _, passed, _ in results)
