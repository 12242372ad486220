"""Shared builders for the test suite."""

from kripkelam import Algebra, Term, closed, lam, place


def term_xy_x() -> Term:
    """Two binders, body is the outer variable: the running example term."""
    return closed(lambda mo, x: lam(lambda mx, y: place(mx.apply(x))))


def term_x_x() -> Term:
    """One binder, body is its own variable."""
    return closed(lambda _mo, x: place(x))


def term_xy_y() -> Term:
    """Two binders, body is the inner variable."""
    return closed(lambda mo, x: lam(lambda mx, y: place(y)))


def deep_term(depth: int) -> Term:
    """``depth`` nested binders around the innermost variable.

    Built without an environment so folding is linear in ``depth``; used to
    exercise the nesting guard.
    """

    def level(j):
        def body(mx, fresh):
            if j == depth:
                return place(fresh)
            return lam(level(j + 1))

        return body

    return closed(level(1))


class Poison:
    """Algebra that records every interpretation and must stay uninvoked."""

    def __init__(self):
        self.calls = 0
        self.alg = Algebra(self._hit, name="poison")

    def _hit(self, body, embed, candidate):
        self.calls += 1
        return 0
