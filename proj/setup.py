from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

setup(
    ext_modules=[
        Pybind11Extension(
            "gaudinlab._gaudinlab",
            ["python/module.cpp"],
            include_dirs=["include", "vendor", "/usr/include/eigen3"],
            cxx_std=20,
        )
    ],
    cmdclass={"build_ext": build_ext},
)
