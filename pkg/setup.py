"""Build the optional compiled field kernel.

The package works without it (``softflat._pyfield`` is used instead), so a
missing compiler or Cython only costs speed.
"""
import os
import sys

from setuptools import setup

ext_modules = []
if os.environ.get("SOFTFLAT_NO_EXT") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension

        openmp = [] if sys.platform == "darwin" else ["-fopenmp"]
        ext_modules = cythonize(
            [
                Extension(
                    "softflat._cfield",
                    ["src/softflat/_cfield.pyx"],
                    include_dirs=[np.get_include()],
                    # no -ffast-math: summation order must stay as written
                    extra_compile_args=["-O3", *openmp],
                    extra_link_args=openmp,
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            compiler_directives={
                "language_level": 3,
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
    except ImportError as exc:
        print(f"softflat: building without compiled kernel ({exc})", file=sys.stderr)

setup(ext_modules=ext_modules)
