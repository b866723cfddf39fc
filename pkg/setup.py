"""Builds the optional compiled kernel extension.

The package is fully functional without it (a NumPy fallback is selected at
import time); set MEDIACRYPT_NO_EXT=1 to skip compilation.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("MEDIACRYPT_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "mediacrypt._kernels._speedups",
                    ["src/mediacrypt/_kernels/_speedups.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
