"""Binary cache for irreducible inventories.

Layout (little endian)::

    b"MFIV"  u8 version  u32 p  u32 k  u64 q  u32 |G|  u16 len  group spec (utf-8)
    u32 n_factors
    per factor:  u32 dim  u32 composition multiplicity  u32 n_gens
                 then n_gens * dim * dim codes (u8 when q <= 256, else u16)

Only generator images are stored; loading rebuilds every element image and
re-certifies each member (irreducible with End of dimension 1).
"""

from __future__ import annotations

import struct

import numpy as np

from .errors import MultfreeError, NotARepresentation
from .field import FiniteField, make_field
from .groups import FiniteGroup
from .linalg import Matrix
from .meataxe import Inventory, ModuleOverAlgebra, end_dim, is_irreducible
from .reps import Representation

MAGIC = b"MFIV"
VERSION = 1


class CacheError(MultfreeError, ValueError):
    pass


def _dtype(q: int):
    return np.dtype("<u1") if q <= 256 else np.dtype("<u2")


def dumps_inventory(inv: Inventory, group_spec: str) -> bytes:
    F = inv.field
    spec = group_spec.encode()
    out = [MAGIC, struct.pack("<BIIQIH", VERSION, F.p, F.k, F.q, inv.group.order, len(spec)), spec]
    out.append(struct.pack("<I", len(inv)))
    dt = _dtype(F.q)
    for rep in inv:
        gens = F.from_stack(rep.gen_stack())  # (n_gens, d, d) codes
        mult = int(rep.provenance.get("composition_multiplicity", 0))
        out.append(struct.pack("<III", rep.dim, mult, gens.shape[0]))
        out.append(gens.astype(dt).tobytes())
    return b"".join(out)


def loads_inventory(data: bytes, group: FiniteGroup, group_spec: str | None = None, seed: int = 42) -> Inventory:
    if data[:4] != MAGIC:
        raise CacheError("not an inventory cache (bad magic)")
    head = struct.calcsize("<BIIQIH")
    version, p, k, q, order, n = struct.unpack_from("<BIIQIH", data, 4)
    if version != VERSION:
        raise CacheError(f"unsupported cache version {version}")
    pos = 4 + head
    spec = data[pos : pos + n].decode()
    pos += n
    if group_spec is not None and spec != group_spec:
        raise CacheError(f"cache is for group {spec!r}, not {group_spec!r}")
    if order != group.order:
        raise CacheError(f"cache is for a group of order {order}, not {group.order}")
    F: FiniteField = make_field(p, k)
    if F.q != q:
        raise CacheError("field header is inconsistent")
    (count,) = struct.unpack_from("<I", data, pos)
    pos += 4
    dt = _dtype(q)
    reps = []
    rng = np.random.default_rng(seed)
    for i in range(count):
        d, mult, ng = struct.unpack_from("<III", data, pos)
        pos += 12
        size = ng * d * d * dt.itemsize
        codes = np.frombuffer(data[pos : pos + size], dtype=dt).astype(np.int64).reshape(ng, d, d)
        pos += size
        if ng != len(group.generators):
            raise CacheError("generator count does not match the group")
        try:
            rep = Representation.from_generators(group, F, [Matrix(F, F.to_stack(c)) for c in codes], f"irr{i}")
        except NotARepresentation:
            raise CacheError(f"cached member {i} is not a representation") from None
        mod = ModuleOverAlgebra.from_representation(rep)
        if not is_irreducible(mod, rng).irreducible or end_dim(mod) != 1:
            raise CacheError(f"cached member {i} failed re-certification")
        rep.provenance["absolutely_irreducible"] = True
        rep.provenance["composition_multiplicity"] = mult
        reps.append(rep)
    if pos != len(data):
        raise CacheError("trailing bytes in cache")
    return Inventory(reps, group, F, None, True, f"cache({spec})")


def save_inventory(path: str, inv: Inventory, group_spec: str) -> None:
    with open(path, "wb") as fh:
        fh.write(dumps_inventory(inv, group_spec))


def load_inventory(path: str, group: FiniteGroup, group_spec: str | None = None, seed: int = 42) -> Inventory:
    with open(path, "rb") as fh:
        return loads_inventory(fh.read(), group, group_spec, seed)
