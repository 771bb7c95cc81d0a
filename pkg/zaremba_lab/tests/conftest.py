#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Puts the package directory on sys.path, so that tests import modules the way the package does (`from model...`).
"""
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
