"""Test harness shims."""

import pkgutil
import sys
from unittest import mock

# Python < 3.11: mock.patch resolves "pkg.sub.name" via getattr chains, so a
# package re-export that shadows a submodule (e.g. onebit.replica.capacity the
# function vs. the module) is picked instead of the submodule. Backport the
# 3.11+ resolution, which prefers importable modules.
if sys.version_info < (3, 11):

    def _get_target(target):
        try:
            target, attribute = target.rsplit(".", 1)
        except (TypeError, ValueError, AttributeError):
            raise TypeError(f"Need a valid target to patch. You supplied: {target!r}")
        return lambda: pkgutil.resolve_name(target), attribute

    mock._get_target = _get_target
