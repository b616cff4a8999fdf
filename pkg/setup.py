"""Build hook for the optional compiled kernels.

The extension is skipped (and the pure-Python kernels used) when Cython or a
C compiler is unavailable, or when FRICKE_NO_EXT=1.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("FRICKE_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("fricke._kernels_c", ["src/fricke/_kernels_c.pyx"], extra_compile_args=["-O2"])],
            compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
