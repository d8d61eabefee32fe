"""JSON documents for algebras, and the packaged example corpus.

A document is UTF-8 JSON with canonical field order

    name, kind, dims, product, [ternary,] alpha, metadata

where the products are sparse entries with 1-based indices and exact
rational strings ("1", "-3/2"), sorted lexicographically by index, and alpha
is a dense matrix of rational strings (a sparse [i, k, "q"] triple list is
also accepted on input).  kind is "hom_superalgebra" (default) or
"binary_ternary"; the distinction matters because on a binary-ternary
algebra the bracket slot of the identity language is the binary operation
itself, not a derived commutator.

Loading validates indices, rationals and the parity rule, so a malformed or
ungraded document never becomes an algebra.  save(load(doc)) is the
canonicalization; it is byte-stable on canonical documents.
"""

import json
from fractions import Fraction
from pathlib import Path

from .kernel import (
    BilinearOp,
    BinaryTernaryAlgebra,
    EvenMap,
    HomSuperalgebra,
    ParityError,
    SuperSpace,
    TernaryOp,
)


class DocumentError(ValueError):
    pass


def _fail(where, message):
    raise DocumentError("%s: %s" % (where, message))


def _parse_rational(where, text):
    if not isinstance(text, str):
        _fail(where, "rational values must be strings, got %r" % (text,))
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        _fail(where, "invalid rational %r" % text)


def _parse_index(where, value, n):
    if not isinstance(value, int) or isinstance(value, bool):
        _fail(where, "index must be an integer, got %r" % (value,))
    if not 1 <= value <= n:
        _fail(where, "basis index %d out of range 1..%d" % (value, n))
    return value - 1


def _parse_sparse(where, raw, n, width):
    entries = {}
    if not isinstance(raw, list):
        _fail(where, "expected a list of entries")
    for pos, entry in enumerate(raw):
        here = "%s[%d]" % (where, pos)
        if not isinstance(entry, list) or len(entry) != width + 1:
            _fail(here, "expected [indices..., rational] with %d indices"
                  % width)
        key = tuple(_parse_index(here, v, n) for v in entry[:width])
        value = _parse_rational(here, entry[width])
        if key in entries:
            _fail(here, "duplicate entry for index %s"
                  % (tuple(i + 1 for i in key),))
        if value != 0:
            entries[key] = value
    return entries


def _parse_alpha(where, raw, space):
    n = space.dim
    if not isinstance(raw, list):
        _fail(where, "expected a dense or sparse matrix")
    # Sparse entries are [i, k, "q"] with integer indices; dense rows hold
    # strings everywhere, so the first element always disambiguates.  An
    # empty list is the sparse zero map.
    sparse = not raw or all(isinstance(e, list) and len(e) == 3
                            and isinstance(e[0], int) for e in raw)
    if not raw and n == 0:
        sparse = False
    rows = [[Fraction(0)] * n for _ in range(n)]
    if sparse:
        seen = set()
        for pos, entry in enumerate(raw):
            here = "%s[%d]" % (where, pos)
            i = _parse_index(here, entry[0], n)
            k = _parse_index(here, entry[1], n)
            if (i, k) in seen:
                _fail(here, "duplicate entry for index (%d, %d)"
                      % (i + 1, k + 1))
            seen.add((i, k))
            rows[i][k] = _parse_rational(here, entry[2])
    else:
        if len(raw) != n:
            _fail(where, "dense matrix must have %d rows" % n)
        for i, row in enumerate(raw):
            if not isinstance(row, list) or len(row) != n:
                _fail("%s[%d]" % (where, i), "row must have %d entries" % n)
            for k, value in enumerate(row):
                rows[i][k] = _parse_rational("%s[%d][%d]" % (where, i, k),
                                             value)
    try:
        return EvenMap(space, rows)
    except ParityError as exc:
        _fail(where, str(exc))


def document_to_algebra(doc, where="document"):
    if not isinstance(doc, dict):
        _fail(where, "expected a JSON object")
    dims = doc.get("dims")
    if (not isinstance(dims, dict) or not isinstance(dims.get("even"), int)
            or not isinstance(dims.get("odd"), int)
            or dims["even"] < 0 or dims["odd"] < 0):
        _fail(where + ".dims", 'expected {"even": E, "odd": O}')
    space = SuperSpace(dims["even"], dims["odd"])
    n = space.dim
    product = BilinearOp(space, entries=_parse_sparse(
        where + ".product", doc.get("product", []), n, 3))
    ternary = None
    if doc.get("ternary") is not None:
        ternary = TernaryOp(space, entries=_parse_sparse(
            where + ".ternary", doc["ternary"], n, 4))
    alpha = _parse_alpha(where + ".alpha", doc.get("alpha", _dense_identity(n)),
                         space)
    kind = doc.get("kind", "hom_superalgebra")
    name = doc.get("name", "")
    if not isinstance(name, str):
        _fail(where + ".name", "name must be a string")
    if kind == "binary_ternary":
        if ternary is None:
            _fail(where, "binary_ternary documents need a ternary product")
        algebra = BinaryTernaryAlgebra(space, product, ternary, alpha,
                                       name=name)
    elif kind == "hom_superalgebra":
        algebra = HomSuperalgebra(space, product, alpha, ternary=ternary,
                                  name=name)
    else:
        _fail(where + ".kind", "unknown kind %r" % kind)
    metadata = doc.get("metadata", {})
    if not isinstance(metadata, dict):
        _fail(where + ".metadata", "metadata must be an object")
    algebra.metadata = metadata
    bad = product.grading_violations()
    if ternary is not None:
        bad = bad + ternary.grading_violations()
    if bad:
        _fail(where, "structure constants break the parity rule at %s"
              % (bad[:4],))
    return algebra


def algebra_to_document(algebra):
    space = algebra.space
    n = space.dim
    doc = {
        "name": algebra.name,
        "kind": algebra.kind,
        "dims": {"even": space.dim_even, "odd": space.dim_odd},
        "product": _sparse_entries(algebra.product.table, 3),
    }
    if algebra.ternary is not None:
        doc["ternary"] = _sparse_entries(algebra.ternary.table, 4)
    doc["alpha"] = [[str(v) for v in row] for row in algebra.alpha.rows]
    doc["metadata"] = getattr(algebra, "metadata", {})
    return doc


def _sparse_entries(table, width):
    out = []

    def walk(node, index):
        if len(index) == width:
            if node != 0:
                out.append([i + 1 for i in index] + [str(node)])
            return
        for i, sub in enumerate(node):
            walk(sub, index + (i,))

    walk(table, ())
    return out


def _dense_identity(n):
    return [["1" if i == k else "0" for k in range(n)] for i in range(n)]


def canonical_text(doc):
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def load_algebra(path):
    path = Path(path)
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError("%s: %s" % (path, exc)) from None
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise DocumentError("%s: invalid JSON at line %d column %d"
                            % (path, exc.lineno, exc.colno)) from None
    return document_to_algebra(doc, where=str(path))


def save_algebra(algebra, path):
    path = Path(path)
    path.write_text(canonical_text(algebra_to_document(algebra)),
                    encoding="utf-8")
    return path


def corpus_dir():
    return Path(__file__).parent / "corpus"


def corpus_paths():
    """The packaged example documents, in sorted (deterministic) order."""
    return sorted(corpus_dir().glob("*.json"))
