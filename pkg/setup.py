import os

from setuptools import setup

ext_modules = []
if not os.environ.get("COVQUANT_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "covquant.kernels._intpoly_c",
                    ["src/covquant/kernels/_intpoly_c.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        # No Cython available: install the pure-Python kernel only.
        ext_modules = []

setup(ext_modules=ext_modules)
