"""Kernel selection: compiled extensions when importable, pure Python otherwise.

Set ``DIRACBAND_PURE_PYTHON=1`` to force the fallback kernels. Kernels load
lazily, so importing the shooting kernel never pulls in the Bessel one.
"""
import importlib
import os

_SOURCES = {
    "bessel": ("._cbessel", "._pybessel"),
    "shoot": ("._cshoot", "._pyshoot"),
}
_cache = {}


def _load(compiled, fallback):
    if os.environ.get("DIRACBAND_PURE_PYTHON", "") not in ("", "0"):
        return importlib.import_module(fallback, __package__), False
    try:
        return importlib.import_module(compiled, __package__), True
    except ImportError:
        return importlib.import_module(fallback, __package__), False


def kernel(name):
    """(module, is_compiled) for the 'bessel' or 'shoot' kernel."""
    if name not in _cache:
        _cache[name] = _load(*_SOURCES[name])
    return _cache[name]


def __getattr__(name):
    if name in _SOURCES:
        return kernel(name)[0]
    if name == "BESSEL_COMPILED":
        return kernel("bessel")[1]
    if name == "SHOOT_COMPILED":
        return kernel("shoot")[1]
    if name == "COMPILED":
        return kernel("bessel")[1] and kernel("shoot")[1]
    raise AttributeError(name)
