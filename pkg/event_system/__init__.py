# The imports in this file are order-dependent, do not reorganize.
from .Event import Event as Event  # noqa: I001
from .Event import EventParameterFlag as EventParameterFlag
from .EventBus import EventBus as EventBus
from .EventBusSingleton import EventBusSingleton as EventBusSingleton
from . import events as events
