import os

from setuptools import Extension, setup

# The compiled kernels must produce bit-identical results to the pure-Python
# fallback, so IEEE semantics are required: no -ffast-math, no FP contraction.
EXT_FLAGS = ["-O3", "-ffp-contract=off"]

ext_modules = []
if not os.environ.get("VISITPROB_PURE_PYTHON"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "visitprob._kernels",
                    ["src/visitprob/_kernels.pyx"],
                    extra_compile_args=EXT_FLAGS,
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
