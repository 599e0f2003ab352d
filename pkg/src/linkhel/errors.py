"""Exception types raised by the linkhel numerical pipelines."""


class LinkhelError(Exception):
    """Base class for all linkhel-specific errors."""


class PoleTooClose(LinkhelError):
    """A point is too close to the stereographic projection pole."""


class DegenerateCurve(LinkhelError):
    """Interpolated curve passes too close to the origin to lie on a sphere."""


class CurvesTooClose(LinkhelError):
    """Two closed curves violate the minimum separation requirement."""


class NearDegenerateTriple(LinkhelError):
    """The triangle spanned by three link points is numerically degenerate."""


class GridTooLarge(LinkhelError):
    """Grid size exceeds the cost guard of a brute-force routine."""


class DegenerateDegree(LinkhelError):
    """A mapping-degree integral is too far from any integer to round."""


class NonzeroLinking(LinkhelError):
    """Triple linking is undefined because a pairwise linking number is nonzero."""

    def __init__(self, p, q, r):
        self.p, self.q, self.r = p, q, r
        super().__init__(
            f"pairwise linking numbers are nonzero: (p, q, r) = ({p}, {q}, {r})"
        )


class LinkDocumentError(LinkhelError):
    """A link input document failed to parse or validate."""

    def __init__(self, message, field=None):
        self.field = field
        if field is not None:
            message = f"{field}: {message}"
        super().__init__(message)
