"""Root counts and the A2 + E6 gluing inside the fixed E8 model."""
from cubiclat import model
from cubiclat.lattice import saturation
from cubiclat.shortvec import roots


def main() -> None:
    e6 = model.e6()
    print("E8 roots:", len(roots(model.E8.lattice())))
    print("E6 roots:", len(roots(e6.lattice())))
    a = model.e6_roots()[0]
    systems = model.x42_decomposition(a)
    print("roots of E6 meeting a fixed root:", len(model.x42(a)), "in", len(systems), "A2 systems")
    gens = [model.A1_ROOT, model.A2_ROOT, *e6.generators]
    _, index = saturation(model.E8.lattice(), model.sublattice_in_e8(gens))
    print("index of A2 + E6 in E8:", index)
    print("glue class of E6 has norm", model.dot(model.glue_e6(), model.glue_e6()))


if __name__ == "__main__":
    main()
