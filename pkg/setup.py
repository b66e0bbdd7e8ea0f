"""Build script: compiles the lattice-enumeration kernel when Cython is available.

The package works without the extension (a pure-Python kernel is selected at
import time); set SESHADRI_NO_EXT=1 to skip the build explicitly.
"""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("SESHADRI_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/seshadri/_kernel.pyx"],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
