"""Build script for the compiled kernel extension.

The extension is optional: if it fails to build or import, the package
falls back to the pure-numpy kernels in ``loggap._kernels._pure``.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

extensions = [
    Extension(
        "loggap._kernels._core",
        ["src/loggap/_kernels/_core.pyx"],
        extra_compile_args=["-O3"],
    )
]

if cythonize is not None:
    ext_modules = cythonize(
        extensions,
        language_level=3,
        compiler_directives={
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
else:
    ext_modules = []

setup(ext_modules=ext_modules)
