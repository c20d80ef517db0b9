"""Exception hierarchy shared by the kernel modules."""


class KernelError(Exception):
    """Base class for all errors raised by sheetcat."""


class DeclarationError(KernelError):
    """Invalid or conflicting declaration in a presentation."""


class BoundaryError(KernelError):
    """Cells or diagrams fail to compose along their boundaries."""


class RuleError(KernelError):
    """A rewrite rule could not be applied as requested."""


class ParseError(KernelError):
    """A text input could not be parsed."""


class SemanticsError(KernelError):
    """Finite-semantics data is malformed or violates its axioms."""


class GuardError(KernelError):
    """An enumeration guard refused an oversized instance."""
