"""Build script for the optional compiled kernel core.

The package is fully functional without the extension (a numpy fallback is
selected at import), so the extension is marked optional: a failed compile
must not fail the install.
"""

from setuptools import Extension, setup

try:
    import numpy
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "uavnav.kernels._core",
                ["src/uavnav/kernels/_core.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                optional=True,
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
