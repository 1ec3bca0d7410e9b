"""Exception types shared across the package."""


class CubicOtError(Exception):
    """Base class for every error raised by cubicot."""


# arithmetic

class NotInvertible(CubicOtError, ValueError):
    def __init__(self, a, modulus, gcd):
        super().__init__(f"{a} is not invertible mod {modulus} (gcd={gcd})")
        self.a = a
        self.modulus = modulus
        self.gcd = gcd


class NotCoprime(CubicOtError, ValueError):
    pass


class NonResidue(CubicOtError, ValueError):
    pass


class SearchExhausted(CubicOtError, RuntimeError):
    pass


class BadPrimeClass(CubicOtError, ValueError):
    pass


# cipher

class OutOfRange(CubicOtError, ValueError):
    pass


class RootCheckFailed(CubicOtError, ValueError):
    pass


class DegenerateRoots(CubicOtError, ValueError):
    pass


class BadRank(CubicOtError, ValueError):
    pass


class TrivialGcd(CubicOtError, ValueError):
    pass


class BadParams(CubicOtError, ValueError):
    pass


class KeyFileError(CubicOtError, ValueError):
    pass


# wire

class FrameError(CubicOtError, ValueError):
    pass


class BadMagic(FrameError):
    pass


class UnknownType(FrameError):
    pass


class Truncated(FrameError):
    pass


class Oversize(FrameError):
    pass


class ProtocolViolation(CubicOtError):
    pass


class AckMismatch(ProtocolViolation):
    def __init__(self, sent, received):
        super().__init__(f"acknowledged rank {received}, sent rank {sent}")
        self.sent = sent
        self.received = received


class ConnectionFailed(CubicOtError, ConnectionError):
    pass


class ConnectionClosed(CubicOtError, ConnectionError):
    pass
