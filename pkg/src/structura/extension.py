"""Canonical extension of maps along echelon types.

Given maps f_i : X_i -> Y_i, every echelon type T over n slots extends them
to a map T<f_1..f_n> between the realizations: a projection extends to the
map itself, P(T) extends elementwise to images, and T1 * T2 extends
componentwise.  `echelon_extend` materializes the full extension;
`apply_extension` pushes a single structure through without materializing,
which is what transport uses on realizations too large to enumerate.
"""

from __future__ import annotations

from .echelon import EchelonType, Pow, Prod, Proj, Realization, realization
from .errors import ArityMismatch
from .maps import FiniteMap
from .values import Pair, SetV, Value, mk_set, render_value


def pow_extend(f: FiniteMap) -> FiniteMap:
    """P<f>: subsets of the domain to their elementwise images."""
    return echelon_extend(Pow(Proj(1, 1)), (f,))


def prod_extend(f1: FiniteMap, f2: FiniteMap) -> FiniteMap:
    """f1 * f2: acts componentwise on ordered pairs."""
    return echelon_extend(Prod(Proj(1, 2), Proj(2, 2)), (f1, f2))


def echelon_extend(t: EchelonType, fs) -> FiniteMap:
    """The canonical extension T<f_1..f_n> as a materialized map."""
    fs = tuple(fs)
    if len(fs) != t.arity:
        raise ArityMismatch(f"type has arity {t.arity} but {len(fs)} maps were given")
    doms = tuple(f.domain for f in fs)
    cods = tuple(f.codomain for f in fs)
    rd, rc, idx = _extend_idx(t, fs, doms, cods)
    return FiniteMap(rd.set, rc.set, idx)


def _extend_idx(t: EchelonType, fs, doms, cods):
    """Extension as an index table between cached realizations."""
    rd = realization(t, doms)
    rc = realization(t, cods)
    if not rd.set.elems:
        return rd, rc, []
    if isinstance(t, Proj):
        return rd, rc, list(fs[t.index - 1].idx)
    if isinstance(t, Pow):
        _, _, inner = _extend_idx(t.inner, fs, doms, cods)
        # subsets ride along as bitmasks: image mask of m reuses m minus
        # its lowest bit, so the whole table costs O(1) per subset
        bit_img = [1 << j for j in inner]
        n_masks = 1 << len(inner)
        img = [0] * n_masks
        for m in range(1, n_masks):
            low = m & -m
            img[m] = img[m ^ low] | bit_img[low.bit_length() - 1]
        mask_of = rd.mask_of
        pos_of = rc.pos_of_mask
        return rd, rc, [pos_of[img[mask_of[p]]] for p in range(n_masks)]
    if isinstance(t, Prod):
        _, _, li = _extend_idx(t.left, fs, doms, cods)
        _, _, ri = _extend_idx(t.right, fs, doms, cods)
        # positions are row-major over the sorted factors on both sides
        nr_cod = _factor_size(rc)
        out = []
        for a in li:
            base = a * nr_cod
            for b in ri:
                out.append(base + b)
        return rd, rc, out
    raise TypeError(f"not an echelon type: {t!r}")


def _factor_size(r: Realization) -> int:
    # size of the right factor of a product realization
    if r.right is not None:
        return len(r.right.set.elems)
    return 0


def apply_extension(t: EchelonType, fs, s: Value, memo: dict = None) -> Value:
    """Push one structure through the extension, pointwise.

    Agrees with echelon_extend(t, fs).apply(s) wherever the latter is
    materializable, but only ever touches the parts of the realization
    that s itself visits.  Pass a dict as `memo` to share subresults
    across many calls with the same maps; sweeps that push thousands of
    structures through one bijection tuple lean on this heavily.
    """
    fs = tuple(fs)
    if len(fs) != t.arity:
        raise ArityMismatch(f"type has arity {t.arity} but {len(fs)} maps were given")
    return _apply(t, fs, s, memo)


def _apply(t: EchelonType, fs, s: Value, memo) -> Value:
    if memo is not None:
        # type nodes and values are both interned, so ids identify them
        mk = (id(t), id(s))
        hit = memo.get(mk)
        if hit is not None:
            return hit
    if isinstance(t, Proj):
        out = fs[t.index - 1].apply(s)
    elif isinstance(t, Pow):
        if not isinstance(s, SetV):
            raise ValueError(f"{render_value(s)} does not match a powerset type")
        # a non-injective tuple may collapse elements; mk_set deduplicates
        out = mk_set(_apply(t.inner, fs, e, memo) for e in s.elems)
    elif isinstance(t, Prod):
        if not isinstance(s, Pair):
            raise ValueError(f"{render_value(s)} does not match a product type")
        out = Pair(_apply(t.left, fs, s.left, memo), _apply(t.right, fs, s.right, memo))
    else:
        raise TypeError(f"not an echelon type: {t!r}")
    if memo is not None:
        memo[mk] = out
    return out


def relation_compose(outer: SetV, inner: SetV) -> SetV:
    """Relational composition on raw pair sets: pairs (a, c) such that
    (a, b) is in `inner` and (b, c) is in `outer` for some b.

    Neither argument needs to be functional; this is the independent route
    for checking the derived transport formulas against extensions.
    """
    by_left = outer.fn_index()
    out = []
    for p in inner.elems:
        if isinstance(p, Pair):
            for c in by_left.get(p.right.key, ()):
                out.append(Pair(p.left, c))
    return mk_set(out)
