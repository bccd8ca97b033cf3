"""Exception types shared across the toolkit."""


class Cubic7Error(Exception):
    pass


class FieldMismatch(Cubic7Error):
    pass


class UnsupportedComposite(FieldMismatch):
    pass


class NotRealEmbedding(Cubic7Error):
    pass


class DimensionMismatch(Cubic7Error):
    pass


class ChartVanishes(Cubic7Error):
    pass


class ClosureFailure(Cubic7Error):
    pass


class SingularS(Cubic7Error):
    pass


class NotInNormalizer(Cubic7Error):
    pass


class NotSingular(Cubic7Error):
    pass


class NotEven(Cubic7Error):
    pass


class ModulusTooLarge(Cubic7Error):
    pass


class NormNotFour(Cubic7Error):
    pass


class NonIntegralImage(Cubic7Error):
    pass


class ParityViolation(Cubic7Error):
    pass


class DeterminantMismatch(Cubic7Error):
    pass


class NotUnimodular(Cubic7Error):
    pass


class NotIsometry(Cubic7Error):
    pass


class ParametrizationMismatch(Cubic7Error):
    pass


class UnknownSuite(Cubic7Error):
    pass
