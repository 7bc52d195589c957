from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

core_sources = [
    "src/qnum.cpp",
    "src/sixj.cpp",
    "src/trimesh.cpp",
    "src/quadrature.cpp",
    "src/sphgeom.cpp",
    "src/statesum.cpp",
    "src/asymp.cpp",
    "src/semiclassical.cpp",
    "src/bindings/module.cpp",
]

ext = Pybind11Extension(
    "tvsph._core",
    core_sources,
    include_dirs=["include", "vendor", "/usr/include/eigen3"],
    libraries=["mpfr", "gmp"],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
