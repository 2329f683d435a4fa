# Licensed under a 3-clause BSD style license - see LICENSE.md
"""
Tests for matcon. Use the function test() in matcon itself, or pytest, to run them.
"""
