import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("DIHEDRALMAPS_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("dihedralmaps._speedups", ["src/dihedralmaps/_speedups.pyx"])],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
    except ImportError:
        # No Cython: install the pure-Python package; the search kernel
        # falls back to dihedralmaps._search_py at import time.
        ext_modules = []

setup(ext_modules=ext_modules)
