"""Build script.

Compiles the integer-kernel extension when Cython and a C compiler are
available; otherwise the package falls back to the pure-Python kernels at
import time.  Set KCOF_PURE_PYTHON=1 to skip the extension build entirely.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("KCOF_PURE_PYTHON") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/kcof/_kernels.pyx"],
            compiler_directives={"language_level": 3, "embedsignature": True},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
