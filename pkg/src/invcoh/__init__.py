"""Coherence workbench for invertible objects in symmetric monoidal
categories: formal composites and their (Z/2)^n evaluation, the free
diagram-category oracle, graded sign rules, finite model categories, and the
group cohomology that classifies graded ring structures."""

from . import cohomology, composites, grammar, kl, models, signs, words

__all__ = ["cohomology", "composites", "grammar", "kl", "models", "signs", "words"]

__version__ = "0.1.0"
