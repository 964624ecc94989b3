class BinftyError(Exception):
    pass


class ArityError(BinftyError, ValueError):
    pass


class HomogeneityError(BinftyError, ValueError):
    pass


class TruncationError(BinftyError):
    """An output word would exceed the configured word cap."""


class CapError(BinftyError, ValueError):
    """A requested arity lies outside the caps of a structure."""


class AxiomError(BinftyError, ValueError):
    """A structure failed one of its defining laws.

    ``law`` names the violated law and ``witness`` is the offending basis
    tuple (generator names).
    """

    def __init__(self, law, witness=None, detail=""):
        self.law = law
        self.witness = witness
        self.detail = detail
        msg = f"{law} violated"
        if witness is not None:
            msg += f" at {witness}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class InconsistencyError(BinftyError):
    """A computed result contradicts a theorem it should satisfy."""
