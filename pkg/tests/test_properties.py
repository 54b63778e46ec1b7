import pytest

from koszulkit.fields import GF, QQ
from koszulkit.verify import PropertySuite, TypeCharComputation, direct_higher0_dim


@pytest.mark.parametrize("name,char", [("A3", 0), ("A4", 2), ("D4", 0)])
def test_identity_suite(name, char):
    comp = TypeCharComputation(name, char, with_frobenius=False)
    suite = PropertySuite(comp, seed=1, trials=30)
    log = suite.run(preprojective=True)
    assert log.ok, log.failures()[:5]


def test_direct_higher0_description():
    for name, char, expected in [("A3", 0, 1), ("A4", 0, 0), ("A3", 2, 2),
                                 ("D4", 0, 4)]:
        comp = TypeCharComputation(name, char, with_frobenius=False)
        assert direct_higher0_dim(comp.preset.algebra) == expected
        assert comp.hi_coh.dim(0) == expected
