# Licensed under a 3-clause BSD style license - see LICENSE.rst
"""Name based lookup of functions and other objects.

Objects are stored per class under a lowercase name. A loader registered
for a name builds the object the first time it is retrieved.
"""

from collections import OrderedDict

__all__ = ['register_loader', 'register', 'retrieve',
           'get_loaders_metadata']

_loaders = OrderedDict()
_instances = OrderedDict()


def _key(data_class, name):
    return (data_class, name.lower())


def register_loader(data_class, name, func, args=None, meta=None,
                    force=False):
    """Register a loader that builds an instance on first retrieval.

    Parameters
    ----------
    data_class : type
        Class of the object the loader returns.
    name : str
        Identifier, case-insensitive.
    func : callable
        Called as ``func(*args, name=name)``.
    args : list, optional
    meta : dict, optional
        Description of the loader, see `get_loaders_metadata`.
    force : bool, optional
        Replace an existing loader of the same name.
    """
    key = _key(data_class, name)
    if key in _loaders and not force:
        raise ValueError("a loader of {0} {1!r} is already registered; use "
                         "force=True to replace it"
                         .format(data_class.__name__, name))
    _loaders[key] = (func, [] if args is None else list(args),
                     {} if meta is None else dict(meta))


def register(instance, name=None, data_class=None, force=False):
    """Register an instance under a name.

    Parameters
    ----------
    instance : object
    name : str, optional
        Defaults to ``instance.name``.
    data_class : type, optional
        Register under this class instead of ``type(instance)``.
    force : bool, optional
        Replace an existing instance or loader of the same name.
    """
    if name is None:
        name = getattr(instance, 'name', None)
        if not isinstance(name, str):
            raise ValueError("no name given and {0!r} has no string 'name' "
                             "attribute".format(instance))
    if data_class is None:
        data_class = type(instance)

    key = _key(data_class, name)
    if (key in _instances or key in _loaders) and not force:
        raise ValueError("{0} {1!r} is already registered; use force=True "
                         "to replace it".format(data_class.__name__, name))
    _instances[key] = instance


def retrieve(data_class, name):
    """Return the instance of ``data_class`` registered as ``name``.

    An instance of ``data_class`` passed as ``name`` is returned as is. A
    name with a loader but no instance yet is loaded and cached.

    Raises
    ------
    KeyError
        If nothing is registered under ``name``; the message lists the
        known names.
    """
    if isinstance(name, data_class):
        return name

    key = _key(data_class, name)
    if key not in _instances:
        if key not in _loaders:
            known = [k[1] for k in _loaders if k[0] is data_class]
            known += [k[1] for k in _instances
                      if k[0] is data_class and k[1] not in known]
            raise KeyError("no {0} named {1!r}; known names: {2}"
                           .format(data_class.__name__, name,
                                   ', '.join(known)))
        func, args, _ = _loaders[key]
        _instances[key] = func(*args, name=key[1])
    return _instances[key]


def get_loaders_metadata(data_class):
    """List of dicts, one per loader of ``data_class``: its name and
    metadata."""
    result = []
    for (cls, name), (_, _, meta) in _loaders.items():
        if cls is data_class:
            d = {'name': name}
            d.update(meta)
            result.append(d)
    return result
