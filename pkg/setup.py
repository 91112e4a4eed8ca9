#!/usr/bin/env python3
"""
Setup script for nhscope
Generalized Petermann factor of non-Hermitian Hamiltonians: sweeps, jump detection, figure data
"""

from setuptools import setup, find_packages
from pathlib import Path

# Get the directory containing this file
HERE = Path(__file__).parent

# Read README file
def read_readme():
    readme_path = HERE / "README.md"
    if readme_path.exists():
        with open(readme_path, "r", encoding="utf-8") as fh:
            return fh.read()
    return "nhscope - generalized Petermann factor toolkit"

# Read runtime requirements; test tools live in the dev extra
def read_requirements():
    requirements_path = HERE / "requirements.txt"
    if requirements_path.exists():
        with open(requirements_path, "r", encoding="utf-8") as fh:
            return [
                line.strip() for line in fh
                if line.strip() and not line.startswith("#") and not line.startswith("pytest")
            ]
    return [
        "numpy>=1.21.0",
        "scipy>=1.9.0",
        "pandas>=1.5.0",
        "pydantic>=2.0.0",
        "python-dotenv>=0.19.0",
    ]

setup(
    name="nhscope",
    version="1.0.0",
    author="nhscope developers",
    description="Generalized Petermann factor sweeps and discontinuity detection for non-Hermitian Hamiltonians",
    long_description=read_readme(),
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Physics",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Operating System :: OS Independent",
    ],
    python_requires=">=3.9",
    install_requires=read_requirements(),
    extras_require={
        "dev": [
            "pytest>=7.0.0",
            "pytest-asyncio>=0.21.0",
        ],
    },
    entry_points={
        "console_scripts": [
            "nhscope=nhscope.main:cli_main",
        ],
    },
    keywords=[
        "non-hermitian",
        "petermann-factor",
        "exceptional-point",
        "eigenvectors",
        "tight-binding",
        "ssh-model",
    ],
    zip_safe=False,
)
