"""Fixed binary snapshot format for grid field states.

Layout (little-endian):
    7 bytes   magic "GALFLD1"
    u16       system-name length, then that many UTF-8 bytes
    u16       rep-label length, then that many UTF-8 bytes
    u32       N (points per axis)
    f64       h (spacing)
    f64       t (time)
    u32       component count
    payload   ncomp arrays of N^3 float64, x-fastest ordering

Round trips are bit-exact; header errors raise BadMagic/Truncated.
"""

import struct

import numpy as np

from ..errors import BadMagic, SnapshotError, Truncated

MAGIC = b"GALFLD1"


class Snapshot:
    def __init__(self, system, rep, N, h, t, data):
        self.system = str(system)
        self.rep = str(rep)
        self.N = int(N)
        self.h = float(h)
        self.t = float(t)
        self.data = [np.asarray(c, dtype=np.float64) for c in data]
        for c in self.data:
            if c.shape != (self.N,) * 3:
                raise SnapshotError("component shape %s != N^3" % (c.shape,))

    def __eq__(self, other):
        return (
            isinstance(other, Snapshot)
            and self.system == other.system
            and self.rep == other.rep
            and self.N == other.N
            and self.h == other.h
            and self.t == other.t
            and len(self.data) == len(other.data)
            and all(np.array_equal(a, b) for a, b in zip(self.data, other.data))
        )


def write_snapshot(path, snap):
    name = snap.system.encode("utf-8")
    rep = snap.rep.encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<H", len(name)))
        fh.write(name)
        fh.write(struct.pack("<H", len(rep)))
        fh.write(rep)
        fh.write(struct.pack("<IddI", snap.N, snap.h, snap.t, len(snap.data)))
        for comp in snap.data:
            # arrays are indexed [x, y, z]; x-fastest means writing the
            # transposed [z, y, x] buffer in C order
            fh.write(np.ascontiguousarray(comp.transpose(2, 1, 0)).tobytes())


def read_snapshot(path):
    with open(path, "rb") as fh:
        blob = fh.read()
    if blob[: len(MAGIC)] != MAGIC:
        raise BadMagic("not a field snapshot: bad magic %r" % blob[: len(MAGIC)])
    off = len(MAGIC)

    def take(n):
        nonlocal off
        if off + n > len(blob):
            raise Truncated("snapshot ends inside the header")
        out = blob[off : off + n]
        off += n
        return out

    (nlen,) = struct.unpack("<H", take(2))
    system = take(nlen).decode("utf-8")
    (rlen,) = struct.unpack("<H", take(2))
    rep = take(rlen).decode("utf-8")
    N, h, t, ncomp = struct.unpack("<IddI", take(24))
    expect = ncomp * N**3 * 8
    payload = blob[off:]
    if len(payload) != expect:
        raise Truncated(
            "payload is %d bytes, header requires %d" % (len(payload), expect)
        )
    data = []
    view = np.frombuffer(payload, dtype="<f8")
    for c in range(ncomp):
        arr = view[c * N**3 : (c + 1) * N**3].reshape(N, N, N)  # [z, y, x]
        data.append(np.ascontiguousarray(arr.transpose(2, 1, 0)))
    return Snapshot(system, rep, N, h, t, data)
