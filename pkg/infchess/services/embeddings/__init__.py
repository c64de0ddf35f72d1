"""Constructions of concrete positions, their certificates and the strategies that play them."""
