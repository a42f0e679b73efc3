"""Builds the optional compiled canonical-key kernel.

The package works without it: diagram.py falls back to the pure-Python
kernel when the extension is absent, and VIRTSTRING_PURE=1 forces the
fallback even when the extension is built.
"""

from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/virtstring/_canonical.pyx"], language_level=3
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
