from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "memfuzz._kernels.core",
                ["src/memfuzz/_kernels/core.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # No Cython: install the pure-Python fallback only.
    extensions = []

setup(ext_modules=extensions)
