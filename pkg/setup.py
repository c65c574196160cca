#!/usr/bin/env python3
"""
Setup script for plmagnus.
"""

import re

from setuptools import setup, find_packages

with open("README.md", "r") as fh:
    long_description = fh.read()

with open("plmagnus/__init__.py", "r") as fh:
    version = re.search(r'^__version__ = "([^"]+)"', fh.read(), re.M).group(1)

setup(
    name="plmagnus",
    version=version,
    author="plmagnus Developers",
    author_email="plmagnus-dev@users.noreply.github.com",
    description="Exact post-Lie Magnus expansions on planar trees and numeric Magnus integrators",
    long_description=long_description,
    long_description_content_type="text/markdown",
    url="https://github.com/plmagnus/plmagnus",
    packages=find_packages(exclude=["tests", "tests.*"]),
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.8",
    install_requires=[
        "numpy>=1.22",
    ],
    extras_require={},
    entry_points={
        "console_scripts": [
            "plmagnus=plmagnus.cli:main",
        ],
    },
)
