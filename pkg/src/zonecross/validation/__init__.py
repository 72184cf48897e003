"""
Validation of CSI traces.
"""

from .validator import TraceValidator

__all__ = ["TraceValidator"]
