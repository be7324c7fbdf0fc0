import pytest

from eqarea import builtin_flux, gaussian_triple, hat, riemann_step

ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def burgers():
    return builtin_flux("burgers")


@pytest.fixture(scope="session")
def lwr():
    return builtin_flux("lwr_traffic")


@pytest.fixture(scope="session")
def gaussians():
    return gaussian_triple()


@pytest.fixture(scope="session")
def step():
    return riemann_step()


@pytest.fixture(scope="session")
def unit_hat():
    return hat()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS, key=lambda k: int(k[1:])):
        ok, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"{key}: {'PASS' if ok else 'FAIL'}  {detail}")
