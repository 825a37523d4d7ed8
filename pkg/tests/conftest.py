import pytest

from entshare import build_scheme, builtin, classify_all


@pytest.fixture(scope="session")
def scheme_422():
    return build_scheme(builtin("code_4_2_2"))


@pytest.fixture(scope="session")
def report_422(scheme_422):
    return classify_all(scheme_422)


@pytest.fixture(scope="session")
def scheme_shor():
    return build_scheme(builtin("shor_9_1_3"))


@pytest.fixture(scope="session")
def report_shor(scheme_shor):
    return classify_all(scheme_shor)


@pytest.fixture(scope="session")
def scheme_642():
    return build_scheme(builtin("code_6_4_2"))


@pytest.fixture(scope="session")
def report_642(scheme_642):
    return classify_all(scheme_642)


@pytest.fixture(scope="session")
def scheme_trivial():
    return build_scheme(builtin("trivial_1_1"))
