"""Artifact output"""

from nhscope.storage.writer import ArtifactWriter

__all__ = ["ArtifactWriter"]
