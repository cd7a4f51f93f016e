"""Exception hierarchy.

Every domain failure derives from :class:`SarumaError`; ``details()``
returns the JSON-ready payload the CLI prints to stderr.
"""


class SarumaError(Exception):
    """Base class for domain errors."""

    def details(self):
        return {"error": type(self).__name__, "message": str(self)}


class NotAFactor(SarumaError):
    def __init__(self, max_remainder, threshold):
        super().__init__(
            f"divisor is not a factor: remainder {max_remainder:.3g} exceeds {threshold:.3g}"
        )
        self.max_remainder = max_remainder
        self.threshold = threshold

    def details(self):
        d = super().details()
        d.update(max_remainder=self.max_remainder, threshold=self.threshold)
        return d


class RootFindingError(SarumaError):
    pass


class UnitPacfEncountered(SarumaError):
    """Inverse Levinson-Durbin hit a partial autocorrelation of modulus 1.

    ``partial`` holds beta_index..beta_n (increasing index order) and
    ``remaining`` the coefficients of 1 - P_index(z), so factoring can be
    resumed by hand.
    """

    def __init__(self, index, partial, remaining):
        super().__init__(f"partial autocorrelation {index} has unit modulus")
        self.index = index
        self.partial = tuple(float(v) for v in partial)
        self.remaining = remaining

    def details(self):
        d = super().details()
        d.update(
            index=self.index,
            partial=list(self.partial),
            remaining=self.remaining.to_list(),
        )
        return d


class NonFinite(SarumaError):
    def __init__(self, index):
        super().__init__(f"non-finite coefficients at order {index}")
        self.index = index

    def details(self):
        d = super().details()
        d["index"] = self.index
        return d


class NotUnitAt(SarumaError):
    def __init__(self, index, value):
        super().__init__(f"partial autocorrelation {index} is {value!r}, not +-1")
        self.index = index
        self.value = value

    def details(self):
        d = super().details()
        d.update(index=self.index, value=self.value)
        return d


class IllDefinedRCs(SarumaError):
    def __init__(self, index):
        super().__init__(f"reflection coefficient {index} has unit modulus")
        self.index = index

    def details(self):
        d = super().details()
        d["index"] = self.index
        return d


class InvalidSpec(SarumaError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(v.message for v in self.violations))

    def details(self):
        d = super().details()
        d["violations"] = [v.to_dict() for v in self.violations]
        return d


class PinnedMA(SarumaError):
    pass


class SeriesTooShort(SarumaError):
    pass


class NonInvertibleMA(SarumaError):
    pass


class CsvParseError(SarumaError):
    def __init__(self, line, text):
        super().__init__(f"line {line}: cannot parse {text!r}")
        self.line = line

    def details(self):
        d = super().details()
        d["line"] = self.line
        return d


class AllStartsFailed(SarumaError):
    pass
