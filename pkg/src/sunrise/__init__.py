from .numerics import BACKEND
