import struct

import pytest

from multfree.cache import CacheError, dumps_inventory, load_inventory, loads_inventory, save_inventory
from multfree.field import make_field
from multfree.meataxe import irreducible_inventory
from multfree.specs import parse_group


@pytest.fixture(scope="module")
def s3_inv():
    g = parse_group("sym(3)")
    return g, irreducible_inventory(g, make_field(5))


@pytest.mark.parametrize("group,p,k", [("sym(3)", 2, 1), ("sym(4)", 3, 1), ("alt(4)", 2, 2), ("gl(2,3)", 17, 1)])
def test_round_trip(tmp_path, group, p, k):
    g = parse_group(group)
    inv = irreducible_inventory(g, make_field(p, k))
    path = str(tmp_path / "inv.bin")
    save_inventory(path, inv, g.spec)
    back = load_inventory(path, g, g.spec)
    assert back.dims() == inv.dims()
    assert back.certified
    for a, b in zip(inv, back):
        assert (a.images == b.images).all()
        assert b.provenance["composition_multiplicity"] == a.provenance["composition_multiplicity"]


def test_wide_codes_for_big_fields():
    g = parse_group("cyclic(2)")
    inv = irreducible_inventory(g, make_field(257))
    data = dumps_inventory(inv, g.spec)
    assert loads_inventory(data, g).dims() == [1, 1]


def test_bad_magic(s3_inv):
    g, inv = s3_inv
    data = dumps_inventory(inv, g.spec)
    with pytest.raises(CacheError, match="magic"):
        loads_inventory(b"XXXX" + data[4:], g)


def test_bad_version(s3_inv):
    g, inv = s3_inv
    data = bytearray(dumps_inventory(inv, g.spec))
    data[4] = 9
    with pytest.raises(CacheError, match="version 9"):
        loads_inventory(bytes(data), g)


def test_wrong_group(s3_inv):
    g, inv = s3_inv
    data = dumps_inventory(inv, g.spec)
    with pytest.raises(CacheError, match="sym\\(3\\)"):
        loads_inventory(data, g, "gl(2,2)")
    with pytest.raises(CacheError, match="order 6"):
        loads_inventory(data, parse_group("sym(4)"))


def test_trailing_bytes(s3_inv):
    g, inv = s3_inv
    with pytest.raises(CacheError, match="trailing"):
        loads_inventory(dumps_inventory(inv, g.spec) + b"\0", g)


def _tamper_last(g, inv, codes):
    # the last member is the 2-dim irreducible; overwrite its generator images
    data = bytearray(dumps_inventory(inv, g.spec))
    size = len(g.generators) * 4
    data[-size:] = bytes(codes * len(g.generators))
    return bytes(data)


def test_failed_certification(s3_inv):
    g, inv = s3_inv
    # identity matrices: a genuine but reducible representation
    with pytest.raises(CacheError, match="re-certification"):
        loads_inventory(_tamper_last(g, inv, [1, 0, 0, 1]), g)


def test_garbage_images(s3_inv):
    g, inv = s3_inv
    with pytest.raises(CacheError, match="not a representation"):
        loads_inventory(_tamper_last(g, inv, [0, 0, 0, 0]), g)


def test_header_layout(s3_inv):
    g, inv = s3_inv
    data = dumps_inventory(inv, g.spec)
    version, p, k, q, order, n = struct.unpack_from("<BIIQIH", data, 4)
    assert (version, p, k, q, order) == (1, 5, 1, 5, 6)
    assert data[4 + struct.calcsize("<BIIQIH"):][:n] == b"sym(3)"
