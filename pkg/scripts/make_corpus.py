"""Regenerate the shipped witness corpus (src/metafusion/corpus/*.json)."""

import itertools
import json
from pathlib import Path

from metafusion.metacyclic import MetacyclicParams, build

OUT = Path(__file__).resolve().parents[1] / "src" / "metafusion" / "corpus"


def matrix_action(mats, p):
    """Permutations induced by 2x2 matrices over F_p on the nonzero vectors."""
    vecs = [v for v in itertools.product(range(p), repeat=2) if any(v)]
    index = {v: i for i, v in enumerate(vecs)}
    perms = []
    for (a, b), (c, d) in mats:
        perms.append([index[((a * x + b * y) % p, (c * x + d * y) % p)] for x, y in vecs])
    return perms


def pgl2_7():
    # projective line over F_7: points 0..6 and infinity = 7
    inf = 7

    def mobius(a, b, c, d):
        img = []
        for z in range(8):
            if z == inf:
                img.append(inf if c == 0 else a * pow(c, -1, 7) % 7)
                continue
            den = (c * z + d) % 7
            img.append(inf if den == 0 else (a * z + b) * pow(den, -1, 7) % 7)
        return img

    return [mobius(1, 1, 0, 1), mobius(3, 0, 0, 1), mobius(0, 6, 1, 0)]


def direct(*parts):
    """Concatenate permutations acting on disjoint point sets."""
    out, shift = [], 0
    for p in parts:
        out += [shift + i for i in p]
        shift += len(p)
    return out


def regular(G, g):
    """Right-regular permutation of element g of a GroupTable."""
    return [int(G.mul[h, g]) for h in range(G.order)]


def affine_c4_squared():
    pts = list(itertools.product(range(4), repeat=2))
    index = {v: i for i, v in enumerate(pts)}
    tx = [index[((x + 1) % 4, y)] for x, y in pts]
    ty = [index[(x, (y + 1) % 4)] for x, y in pts]
    # (x, y) -> (-y, x - y) has order 3 and acts fixed-point-freely on C2^2
    m = [index[((-y) % 4, (x - y) % 4)] for x, y in pts]
    return [tx, ty, m]


def groups():
    cyc3, tr3, id3 = [1, 2, 0], [1, 0, 2], [0, 1, 2]
    c8 = [1, 2, 3, 4, 5, 6, 7, 0]
    c4 = [1, 2, 3, 0]
    M16 = build(MetacyclicParams(3, 1, 5, 0))
    ident16 = list(range(16))
    yield "a4", 4, [[1, 2, 0, 3], [0, 2, 3, 1]], "alternating group A4; Sylow C2^2"
    yield "a5", 5, [[1, 2, 3, 4, 0], [1, 2, 0, 3, 4]], "alternating group A5; Sylow C2^2"
    yield "s3", 3, [tr3, cyc3], "symmetric group S3; Sylow C2"
    yield "s4", 4, [[1, 0, 2, 3], [1, 2, 3, 0]], "symmetric group S4; Sylow D8"
    yield "sl2_3", 8, matrix_action([((1, 1), (0, 1)), ((1, 0), (1, 1))], 3), \
        "SL(2,3) on the nonzero vectors of F_3^2; Sylow Q8"
    yield "gl2_3", 8, matrix_action([((1, 1), (0, 1)), ((1, 0), (1, 1)), ((2, 0), (0, 1))], 3), \
        "GL(2,3) on the nonzero vectors of F_3^2; Sylow SD16"
    yield "sl2_7", 48, matrix_action([((1, 1), (0, 1)), ((1, 0), (1, 1))], 7), \
        "SL(2,7) on the nonzero vectors of F_7^2; Sylow Q16"
    yield "pgl2_7", 8, pgl2_7(), "PGL(2,7) on the projective line; Sylow D16"
    yield "c4sq_c3", 16, affine_c4_squared(), "(C4 x C4) : C3, affine on (Z/4)^2; Sylow C4^2"
    yield "s3_x_c8", 11, [direct(tr3, list(range(8))), direct(cyc3, list(range(8))),
                          direct(id3, c8)], "S3 x C8; Sylow C2 x C8"
    yield "c3_c4", 7, [direct(cyc3, list(range(4))), direct(tr3, c4)], \
        "C3 : C4 with the generator of C4 inverting C3; Sylow C4"
    yield "d14", 7, [[1, 2, 3, 4, 5, 6, 0], [0, 6, 5, 4, 3, 2, 1]], "dihedral group of order 14; Sylow C2"
    yield "c3_m16", 19, [direct(id3, regular(M16, 1)), direct(tr3, regular(M16, 8)),
                         direct(cyc3, ident16)], "C3 : M16 with y inverting C3; Sylow M16"
    yield "c2_x_c6", 7, [[1, 0, 2, 3, 4, 5, 6], [0, 1, 3, 2, 4, 5, 6], [0, 1, 2, 3, 5, 6, 4]], \
        "C2 x C6 on 2 + 2 + 3 points; Sylow C2^2 but 2-nilpotent"


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name, degree, gens, desc in groups():
        doc = {"name": name, "description": desc, "degree": degree, "generators": gens}
        (OUT / f"{name}.json").write_text(json.dumps(doc) + "\n")


if __name__ == "__main__":
    main()
