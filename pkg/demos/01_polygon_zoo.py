"""Walk through the polygon presets: face counts, angles, and fan convexity.

Polygons already show the whole classification ladder: the triangle's normal
fan is not even locally convex, rectangles are convex but never pointed, and
an obtuse pentagon or the Delzant hexagon reach strong convexity.
"""

from torsig.fan import classify, is_flag, normal_fan, singularity_index
from torsig.generators import polygon
from torsig.invariants import h_vector, sigma

for name in ("triangle", "square", "rectangle-2x1", "obtuse-pentagon",
             "delzant-hexagon"):
    p = polygon(name)
    fan = normal_fan(p)
    cls = classify(fan)
    f = p.f_vector()
    print(f"{name:>16}: f = {f}, h = {h_vector(f)}, sigma = {sigma(f)}")
    print(f"{'':>16}  angles: {p.angle_class().label},"
          f" fan: {cls.overall.label}, m = {singularity_index(fan)},"
          f" flag = {is_flag(fan)}")
