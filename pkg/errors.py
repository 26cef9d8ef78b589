#!/usr/bin/env python3
"""
Exception hierarchy for the planar colouring toolkit

Library code raises these; only main.py turns them into JSON error
documents and exit codes.
"""

from typing import Any, Dict, Optional


class ColouringError(Exception):
    """Root of every error raised by the toolkit"""

    code = "ColouringError"

    def __init__(self, message: str = "", **details: Any):
        super().__init__(message or self.code)
        self.message = message or self.code
        self.details = details

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {"error": self.code, "message": self.message}
        if self.details:
            payload["details"] = self.details
        return payload


# Embedding and surgery

class EmbeddingError(ColouringError):
    code = "EmbeddingError"


class AsymmetricRotation(EmbeddingError):
    code = "AsymmetricRotation"


class DuplicateNeighbour(EmbeddingError):
    code = "DuplicateNeighbour"


class NotPlanarEmbedding(EmbeddingError):
    code = "NotPlanarEmbedding"


class UnknownOuterFace(EmbeddingError):
    code = "UnknownOuterFace"


class UnknownFace(EmbeddingError):
    code = "UnknownFace"


class WalkNotCycle(EmbeddingError):
    code = "WalkNotCycle"


class NotACutVertex(EmbeddingError):
    code = "NotACutVertex"


class NotAChord(EmbeddingError):
    code = "NotAChord"


class MissingItem(EmbeddingError):
    code = "MissingItem"


# Lists and matchings

class AssignmentError(ColouringError):
    code = "AssignmentError"


class MissingList(AssignmentError):
    code = "MissingList"


class MatchingOnNonEdge(AssignmentError):
    code = "MatchingOnNonEdge"


class PinNotInList(AssignmentError):
    code = "PinNotInList"


# Solvers

class SolverError(ColouringError):
    code = "SolverError"


class PartialColouring(SolverError):
    code = "PartialColouring"


class LimitExceeded(SolverError):
    code = "LimitExceeded"


class HypothesisViolated(SolverError):
    code = "HypothesisViolated"


class InternalContradiction(SolverError):
    code = "InternalContradiction"


class NotAClique(SolverError):
    code = "NotAClique"


class DoesNotHitAllOffensiveTriangles(SolverError):
    code = "DoesNotHitAllOffensiveTriangles"


# Gadgets, generators, files

class BadParameters(ColouringError):
    code = "BadParameters"


class VerificationFailed(ColouringError):
    code = "VerificationFailed"


class RetriesExhausted(ColouringError):
    code = "RetriesExhausted"


class FormatError(ColouringError):
    code = "FormatError"


class ParseError(FormatError):
    code = "ParseError"

    def __init__(self, message: str = "", location: Optional[str] = None, **details: Any):
        super().__init__(message, location=location, **details)
        self.location = location


class ConsistencyError(FormatError):
    code = "ConsistencyError"
