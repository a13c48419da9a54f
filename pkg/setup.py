"""Build the compiled stepping kernels. Falls back to a pure-Python install
when Cython is unavailable; the package selects the numpy backend at import
in that case."""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "brinkfront._kernels",
                ["src/brinkfront/_kernels.pyx"],
                # ffp-contract=off keeps the loops bit-compatible with the
                # numpy backend (no FMA contraction)
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
