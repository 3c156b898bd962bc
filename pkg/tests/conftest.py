import pytest

from quasistab.codes import (
    build_eight_three,
    build_five_qubit,
    build_ten_four,
    quadratic_residue_code,
)
from quasistab.noise import build_decoder


@pytest.fixture(scope="session")
def five():
    return build_five_qubit()


@pytest.fixture(scope="session")
def eight3():
    return build_eight_three()


@pytest.fixture(scope="session")
def ten4():
    return build_ten_four()


@pytest.fixture(scope="session")
def qr13():
    return quadratic_residue_code(13)


@pytest.fixture(scope="session")
def small_codes(five, eight3, ten4, qr13):
    return [five, eight3, ten4, qr13]


@pytest.fixture(scope="session")
def five_table(five):
    return build_decoder(five, 1)


@pytest.fixture(scope="session")
def tables(small_codes):
    return {code.name: build_decoder(code, code.correctable_weight()) for code in small_codes}
