#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Setup module for installing the Zaremba laboratory including its dependencies.
"""

from setuptools import setup, find_packages

with open("README.md", "r", encoding="UTF-8") as file:
    long_description = file.read()

setup(
    name="zaremba-lab",
    version="1.0.0",
    description="Experiments around Zaremba's conjecture: continued fractions, Cantor-type sum sets and "
                "expansion in SL2(Z/qZ).",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["examples", "examples.*"]),
    include_package_data=True,
    package_data={"zaremba_lab": ["resources/templates/*.yaml"]},
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: GNU Affero General Public License v3 or later (AGPLv3+)",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires='>=3.8',
    install_requires=[
        "numpy >= 1.21",
        "oyaml",
        "pandas >= 1.5",
        "pytest",
        "sympy",
        "typeguard >= 2.12.1, < 3",
        "colorama",
    ],
    entry_points={
        "console_scripts": ["zlab = zaremba_lab.runner:cli"],
    },
)
