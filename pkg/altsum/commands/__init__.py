from altsum.commands import bounds, euler, meta, series

MODULES = (series, bounds, euler, meta)

HANDLERS = {name: handler for module in MODULES for name, handler in module.HANDLERS.items()}
