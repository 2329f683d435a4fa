# Licensed under a 3-clause BSD style license - see LICENSE.md

__all__ = ['__version__', 'test']

try:
    from .version import version as __version__
except ImportError:
    __version__ = ''


# set up the test command
def _get_test_runner():
    import os
    from astropy.tests.runner import TestRunner
    return TestRunner(os.path.dirname(__file__))


def test(package=None, test_path=None, args=None, plugins=None,
         verbose=False, pdb=False, coverage=False, **kwargs):
    """
    Run the matcon tests using `py.test <https://docs.pytest.org>`__.

    Parameters
    ----------
    package : str, optional
        The name of a specific module to test, e.g. 'quantum'.
        If nothing is specified all default tests are run.
    test_path : str, optional
        Specify location to test by path. May be a single file or
        directory.
    args : str, optional
        Additional arguments to be passed to ``pytest.main``.
    plugins : list, optional
        Plugins to be passed to ``pytest.main``.
    verbose : bool, optional
        Same as specifying ``'-v'`` in ``args``.
    pdb : bool, optional
        Turn on PDB post-mortem analysis for failing tests.
    coverage : bool, optional
        Generate a test coverage report.
    kwargs
        Passed on to the astropy test runner.
    """
    # work around pytest issue causing test failures on
    # write only file systems
    import sys
    sys.dont_write_bytecode = True

    test_runner = _get_test_runner()
    return test_runner.run_tests(
        package=package, test_path=test_path, args=args,
        plugins=plugins, verbose=verbose, pdb=pdb,
        coverage=coverage, **kwargs)
