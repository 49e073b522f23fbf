#!/usr/bin/env python3
"""
Setup script for Triangulation Cycle Census
"""

from setuptools import setup

# Read the README file
def read_readme():
    with open("README.md", "r", encoding="utf-8") as fh:
        return fh.read()

# Read requirements
def read_requirements(path="requirements.txt"):
    with open(path, "r", encoding="utf-8") as fh:
        return [line.split("#", 1)[0].strip() for line in fh if line.split("#", 1)[0].strip()]

setup(
    name="triangulation-census",
    version="1.0.0",
    author="Triangulation Census Team",
    author_email="your-email@example.com",
    description="Exact cycle counts, constructive cycle procedures and counting-base certificates for planar triangulations",
    long_description=read_readme(),
    long_description_content_type="text/markdown",
    url="https://github.com/yourusername/triangulation-census",
    py_modules=[
        "census_errors",
        "plane_graph",
        "dual",
        "generators",
        "cycles",
        "proof_procedures",
        "counting_base",
        "census_formats",
        "census_suite",
        "census_cli",
    ],
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Operating System :: OS Independent",
    ],
    python_requires=">=3.8",
    install_requires=read_requirements(),
    extras_require={"dev": read_requirements("requirements-dev.txt")},
    entry_points={
        "console_scripts": [
            "triangulation-census=census_cli:main",
        ],
    },
    keywords="planar graph, triangulation, cycles, hamiltonian, dual graph, plantri",
    project_urls={
        "Bug Reports": "https://github.com/yourusername/triangulation-census/issues",
        "Source": "https://github.com/yourusername/triangulation-census",
    },
)
