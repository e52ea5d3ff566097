# Builds the optional compiled kernels. If Cython is unavailable the
# package installs anyway and falls back to the pure-Python kernels.
import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "occlubench._native",
                ["src/occlubench/_native.pyx"],
                include_dirs=[np.get_include()],
                # Keep float expressions un-fused so the compiled kernels
                # are bit-identical to the pure-Python ones.
                extra_compile_args=["-O2", "-ffp-contract=off"],
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
