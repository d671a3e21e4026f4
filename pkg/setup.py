# Build the optional Cython kernels in place with
#   python3 setup.py build_ext --inplace
# If compilation fails the package still installs and runs on the
# pure-Python kernels in searchlab._kernels_py.
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "searchlab._kernels",
                ["src/searchlab/_kernels.pyx"],
                extra_compile_args=["-O3", "-fcx-limited-range"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
