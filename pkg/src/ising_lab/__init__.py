"""Toolkit for Ising partition functions of bounded-degree graphs."""
