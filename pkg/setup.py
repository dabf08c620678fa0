"""Build script for the optional compiled simulator kernels.

The package is fully functional without the extension: the simulator
falls back to numpy kernels when `qftarith.sim._kernels` is missing.
"""

from setuptools import Extension, setup

try:
    import numpy as np
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "qftarith.sim._kernels",
                ["src/qftarith/sim/_kernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
