"""Conveyor belts on systems of disjoint disks."""
