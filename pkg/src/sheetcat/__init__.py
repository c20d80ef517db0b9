"""sheetcat: sheet-diagram kernel with a proof checker and finite semantics."""

__version__ = "0.1.0"
