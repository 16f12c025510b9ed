"""Cycle powers: Turan and spectral Turan toolkit."""
