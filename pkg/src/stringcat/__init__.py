"""stringcat: term and string-diagram languages of monoidal categories."""
from __future__ import annotations

__version__ = '0.1.0'
