"""Build the optional compiled core.

The pure-Python fallback in ``symdisc._purecore`` is used whenever the
extension is missing, so a failed or skipped compile is not fatal.
"""
import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("SYMDISC_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("symdisc._core", ["src/symdisc/_core.pyx"],
                       extra_compile_args=["-O3"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
