"""Higher-order encoding of binder-only lambda terms.

A term is represented by what folding it means: a closed term is a function
from algebras to carrier values, and an algebra says how to interpret a
single binder node. Binder bodies live in a Kripke function space: a body
rooted at world ``X`` can be asked for its meaning at any world ``Y``
reachable from ``X`` through a renaming, given a denotation for the fresh
bound variable in ``Y``. That is what lets an outer bound variable be moved
under later binders.

Algebras are Mendler-style: the interpreter for a binder node receives the
body abstracted over an algebra *candidate* family, plus an embedding from
real algebras into that family, so the algebra can re-interpret subterms
without the algebra type occurring negatively. In this library the candidate
family is always the algebra type itself and the embedding is the identity;
the extra arguments are kept because ``lam_alg`` (the weakly initial
algebra) forwards them.

Python cannot enforce the world abstraction statically. The contract is by
API opacity: a body must treat its fresh-variable argument as opaque, using
it only through ``place`` and through renames. Algebras that respect purity
may be folded concurrently; all values here are immutable after
construction.

Deep terms: folding recurses once per binder. Folds are guarded by a
nesting counter (default limit ``DEFAULT_MAX_NESTING``); exceeding the
active limit raises :class:`DepthLimitError` instead of exhausting the
interpreter stack. To make the default limit reachable on CPython, a fold
that outgrows a small inline nesting cap, or the calling thread's stack,
is re-run on a worker thread with a large stack and a raised recursion
limit (raised globally and left in place; lowering it would endanger
concurrent deep folds). This re-running relies on folds being pure.
"""

from __future__ import annotations

import sys
import threading
from typing import Any, Callable

__all__ = [
    "Algebra",
    "DEFAULT_MAX_NESTING",
    "DepthLimitError",
    "OpenTerm",
    "Rename",
    "Term",
    "closed",
    "fold",
    "identity_embed",
    "lam",
    "lam_alg",
    "place",
    "run_guarded",
]

DEFAULT_MAX_NESTING = 10_000

# Python frames consumed per binder level while folding, with margin.
_FRAMES_PER_LEVEL = 16
_FRAME_HEADROOM = 2048

# Nesting depth safe on the calling thread's stack. Anything deeper is
# retried on a worker thread with a private large stack.
_INLINE_NESTING_CAP = 400
_WORKER_STACK_BYTES = 512 * 1024 * 1024


class DepthLimitError(RuntimeError):
    """A fold nested more binders than the active guard allows."""

    def __init__(self, limit: int):
        super().__init__(f"binder nesting exceeds the configured limit of {limit}")
        self.limit = limit


class Rename:
    """A world coercion: moves values from one world into a later one."""

    __slots__ = ("_apply",)

    def __init__(self, apply: Callable[[Any], Any]):
        self._apply = apply

    def apply(self, value):
        return self._apply(value)

    def then(self, outer: "Rename") -> "Rename":
        """Left-to-right composition: ``f.then(g).apply(x) == g.apply(f.apply(x))``."""
        return Rename(lambda value: outer._apply(self._apply(value)))

    @staticmethod
    def identity() -> "Rename":
        return _IDENTITY_RENAME


_IDENTITY_RENAME = Rename(lambda value: value)

# A binder body: callable (rename, fresh) -> OpenTerm. The rename moves
# values from the body's root world to the world the body is asked at, and
# `fresh` is the bound variable's denotation there.
TermBody = Callable[[Rename, Any], "OpenTerm"]

# Maps an algebra into whatever candidate family is in play.
Embed = Callable[["Algebra"], Any]


class OpenTerm:
    """A term meaning at one carrier: feed it an algebra, get the value."""

    __slots__ = ("_run",)

    def __init__(self, run: Callable[[Any], Any]):
        self._run = run

    def interpret(self, alg):
        return self._run(alg)


class Algebra:
    """Interpreter for a single binder node, producing carrier values.

    The wrapped function is called as ``fn(body, embed, candidate)`` where
    ``body`` is the node's Kripke body, ``embed`` maps algebras into the
    candidate family, and ``candidate`` is this algebra's own candidate
    view. It must return a carrier value and be total on well-formed
    bodies.
    """

    __slots__ = ("_interpret", "name")

    def __init__(self, interpret_lam: Callable[[TermBody, Embed, Any], Any], name: str | None = None):
        self._interpret = interpret_lam
        self.name = name

    def interpret_lam(self, body: TermBody, embed: Embed, candidate):
        g = _guard
        if g.active:
            g.count += 1
            if g.count > g.limit:
                raise DepthLimitError(g.limit)
        return self._interpret(body, embed, candidate)

    def __repr__(self):
        return f"Algebra({self.name})" if self.name else object.__repr__(self)


class Term:
    """A closed term: interpretable by every algebra at every carrier."""

    __slots__ = ("_run",)

    def __init__(self, run: Callable[[Algebra], Any]):
        self._run = run

    def run(self, alg: Algebra):
        return self._run(alg)


def _identity(value):
    return value


def identity_embed() -> Embed:
    """The embedding used when the candidate family is the algebra type."""
    return _identity


def place(x) -> OpenTerm:
    """Treat an already-interpreted value as a term; the algebra is ignored."""
    return OpenTerm(lambda _alg: x)


def lam(body: TermBody) -> OpenTerm:
    """Wrap one binder around ``body``, rooted at the current world.

    Interpreting the result with an algebra hands the body straight to that
    algebra, with the candidate family instantiated to the algebra type
    itself and the identity embedding.
    """

    def run(alg):
        return alg.interpret_lam(body, _identity, alg)

    return OpenTerm(run)


def _rebuild_lam(body: TermBody, embed: Embed, _construction_alg) -> Term:
    # _construction_alg is deliberately unused: the produced term always
    # defers to whichever algebra it is eventually folded with.
    def run(alg):
        def shifted(mx: Rename, fresh):
            return body(Rename(lambda t: mx.apply(t.run(alg))), fresh)

        return alg.interpret_lam(shifted, embed, embed(alg))

    return Term(run)


_LAM_ALG = Algebra(_rebuild_lam, name="lam_alg")


def lam_alg() -> Algebra:
    """The algebra whose carrier is ``Term`` itself.

    Interpreting a binder with it yields a term that, when later folded with
    some algebra ``alg``, re-interprets the original body using ``alg``:
    bound subterms reaching the body through a rename are folded with
    ``alg`` on the way. This is the weakly initial algebra; ``fold(alg, _)``
    is a homomorphism from it to any ``alg`` (see :mod:`kripkelam.laws`).
    """
    return _LAM_ALG


def closed(builder: TermBody) -> Term:
    """Package a world-polymorphic binder body as a closed term.

    ``builder`` receives a rename from an empty outer world (never useful,
    conventionally ignored) and the outermost bound variable. There is no
    closed term without at least one binder, so this is the only way to
    make a :class:`Term` from scratch.
    """
    return Term(lambda alg: lam(builder).interpret(alg))


def fold(alg: Algebra, t: Term, max_depth: int | None = None):
    """Interpret a closed term with an algebra.

    Pure: same term, same algebra, same result. ``max_depth`` overrides the
    nesting guard for this fold (default ``DEFAULT_MAX_NESTING``). With a
    function-typed carrier the carrier value may recurse further when
    applied; apply it inside :func:`run_guarded` (or use the entry points in
    :mod:`kripkelam.algebras`) to keep the guard's protection.
    """
    return run_guarded(lambda: t.run(alg), max_depth)


class _GuardState(threading.local):
    active = False
    count = 0
    limit = DEFAULT_MAX_NESTING


_guard = _GuardState()
_worker_setup_lock = threading.Lock()


def _run_scoped(thunk, limit: int, raise_recursion_limit: bool):
    if raise_recursion_limit:
        # Raised and left in place: lowering it while another thread is mid
        # deep fold would break that fold.
        need = limit * _FRAMES_PER_LEVEL + _FRAME_HEADROOM
        if sys.getrecursionlimit() < need:
            sys.setrecursionlimit(need)
    g = _guard
    g.active = True
    g.count = 0
    g.limit = limit
    try:
        return thunk()
    finally:
        g.active = False


def _run_on_worker(thunk, limit: int):
    outcome: dict[str, Any] = {}

    def work():
        try:
            outcome["value"] = _run_scoped(thunk, limit, raise_recursion_limit=True)
        except BaseException as exc:  # noqa: BLE001 - forwarded to the caller
            outcome["error"] = exc

    with _worker_setup_lock:
        previous = threading.stack_size()
        try:
            threading.stack_size(_WORKER_STACK_BYTES)
            worker = threading.Thread(target=work, name="kripkelam-deep-fold")
            worker.start()
        finally:
            threading.stack_size(previous)
    worker.join()
    if "error" in outcome:
        raise outcome["error"]
    return outcome["value"]


def run_guarded(thunk: Callable[[], Any], max_depth: int | None = None):
    """Run ``thunk`` under the binder-nesting guard and return its result.

    Inside an already-guarded computation this is a plain call, so nested
    folds accumulate into the enclosing count. At top level the thunk first
    runs inline without touching the interpreter's recursion limit; if the
    calling thread's stack runs out first, or the inline nesting cap trips
    below the requested limit, the thunk is re-run on a worker thread with
    a large stack and a recursion limit to match. The thunk therefore may
    execute twice and must be pure, which every fold of conforming algebras
    is.
    """
    if _guard.active:
        return thunk()
    limit = DEFAULT_MAX_NESTING if max_depth is None else int(max_depth)
    if limit < 1:
        raise ValueError("max_depth must be at least 1")
    inline_limit = min(limit, _INLINE_NESTING_CAP)
    try:
        return _run_scoped(thunk, inline_limit, raise_recursion_limit=False)
    except DepthLimitError as trip:
        if trip.limit != inline_limit or inline_limit == limit:
            raise
    except RecursionError:
        pass
    return _run_on_worker(thunk, limit)
