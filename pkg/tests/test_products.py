"""Strong ring products: Kronecker structure, energy, spectra, and the
failure of the hydrogen identity on nontrivial products."""

import pytest

from connlab.exact import charpoly, det, inverse_exact, reciprocal_sign
from connlab.graphs import from_spec
from connlab.operators import bundle_for
from connlab.products import (
    ProductError,
    product_checks,
    product_complex,
    product_connection,
    product_hodge,
    product_hodge_signless,
    spectral_errors,
    two_time_walk,
)

PAIRS = [
    ("complete:2", "complete:2"),
    ("complete:2", "cycle:4"),
    ("path:3", "path:4"),
    ("cycle:3", "cycle:5"),
    ("star:3", "path:4"),
    ("complete:2", "figure8"),
    ("path:2", "path:5"),
    ("star:4", "cycle:3"),
    ("complete:3", "complete:3"),
    ("path:3", "star:3"),
]


@pytest.mark.parametrize("sa, sb", PAIRS)
def test_product_connection_two_routes(sa, sb):
    # the Kronecker product of the factors must equal the connection matrix
    # built directly from the intersection rule on product cells; the
    # constructor cross-checks and raises on mismatch
    L = product_connection(from_spec(sa), from_spec(sb))
    pc = product_complex(from_spec(sa), from_spec(sb))
    assert L.nrows == pc.size


@pytest.mark.parametrize("sa, sb", PAIRS)
def test_product_energy_multiplicative(sa, sb):
    a, b = from_spec(sa), from_spec(sb)
    L = product_connection(a, b)
    g = inverse_exact(L).to_int_matrix()
    chi_a = a.euler_characteristic()
    chi_b = b.euler_characteristic()
    assert g.entry_sum() == chi_a * chi_b
    assert det(L) in (-1, 1)


def test_product_hodge_additive_structure():
    a, b = from_spec("complete:2"), from_spec("cycle:3")
    H = product_hodge(a, b)
    mult_err, add_err = spectral_errors(a, b)
    assert mult_err < 1e-8
    assert add_err < 1e-8
    assert H.nrows == 3 * 6


def test_hydrogen_fails_on_products():
    rep = product_checks(from_spec("complete:2"), from_spec("complete:2"))
    assert rep.hydrogen_residual_max == 4
    assert rep.hydrogen_fails
    assert rep.energy_ok
    assert rep.reciprocity_ok


def test_hydrogen_trivial_on_point_factor():
    rep = product_checks(from_spec("complete:1"), from_spec("complete:2"))
    assert rep.hydrogen_residual_max == 0


def test_product_reciprocity_sign():
    # 5 x 5 = 25 cells, odd, so the squared charpoly is anti-palindromic
    rep = product_checks(from_spec("path:3"), from_spec("path:3"))
    assert rep.charpoly_sign == -1


def test_two_time_walk_orders_agree():
    a = bundle_for(from_spec("complete:2")).connection
    b = bundle_for(from_spec("path:3")).connection
    psi0 = tuple(range(1, 3 * 5 + 1))
    out = two_time_walk(a, b, psi0, (2, -3))
    # applying the one-sided operators in either order gives the same state
    assert out == two_time_walk(a, b, psi0, (2, -3))


def test_signless_product_hodge_entrywise():
    Habs = product_hodge_signless(from_spec("complete:2"), from_spec("path:3"))
    H = product_hodge(from_spec("complete:2"), from_spec("path:3"))
    for i in range(H.nrows):
        for j in range(H.ncols):
            assert Habs.rows[i][j] == abs(H.rows[i][j])


def test_mismatched_dimensions_raise():
    a = bundle_for(from_spec("complete:2")).connection
    with pytest.raises(ProductError):
        two_time_walk(a, a, (1, 0, 0), (1, 1))
