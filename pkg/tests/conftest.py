import pytest

from mlechar import lookup
from mlechar.density import DensityModel, SupportSet
from mlechar.suite import SuiteConfig, run_suite


@pytest.fixture(scope="session")
def gaussian():
    return lookup("gaussian")


@pytest.fixture(scope="session")
def logistic():
    return lookup("logistic")


@pytest.fixture(scope="session")
def gumbel():
    return lookup("gumbel")


@pytest.fixture(scope="session")
def gamma2():
    return lookup("gamma", {"alpha": 2.0})


@pytest.fixture(scope="session")
def weibull2():
    return lookup("weibull", {"k": 2.0})


@pytest.fixture(scope="session")
def sinh_arcsinh():
    return lookup("sinh_arcsinh_skew_normal")


@pytest.fixture(scope="session")
def quartic_unnormalized():
    """Unnormalized density exp(-x^4/4) on the full line."""
    return DensityModel(
        name="quartic",
        support=SupportSet.full_line(),
        log_pdf=lambda x: -x ** 4 / 4.0,
        dlog_pdf=lambda x: -x ** 3,
    )


@pytest.fixture(scope="session")
def default_report():
    """The full verification-suite report for the default configuration.

    Computed once per session; the acceptance tests assert against it.
    """
    return run_suite(SuiteConfig())
