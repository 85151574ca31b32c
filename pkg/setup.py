"""Build script: compiles the optional Cython kernel extension.

The package works without the extension (a NumPy/LAPACK fallback is
selected at import time), so the build is marked optional and any
compilation failure degrades gracefully to the pure-Python kernels.
"""

from setuptools import Extension, setup

try:
    import numpy
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "logkdv._core",
                ["src/logkdv/_core.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
