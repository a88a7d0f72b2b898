import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("SPECMOLL_PURE_PYTHON"):
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "specmoll._kernels",
                ["src/specmoll/_kernels.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
