#include "tglab/corpus.hpp"

namespace tglab::corpus {

namespace {

Fan make(std::size_t dim, std::vector<std::vector<long>> rays, std::vector<std::vector<std::size_t>> cones) {
    Fan f;
    f.dim = dim;
    for (const auto& r : rays) f.rays.push_back(to_int_vector(r));
    f.max_cones = std::move(cones);
    return f;
}

}  // namespace

Fan p1() { return make(1, {{1}, {-1}}, {{0}, {1}}); }

Fan p2() { return make(2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {0, 2}}); }

Fan p1xp1() { return make(2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, {{0, 2}, {0, 3}, {1, 2}, {1, 3}}); }

Fan hirzebruch(long a) { return make(2, {{1, 0}, {0, 1}, {-1, a}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}); }

Example p1_o2() { return {"P1/O(2)", p1(), IntegerMatrix{{2, 0}}}; }

Example p2_o1() { return {"P2/O(1)", p2(), IntegerMatrix{{1, 0, 0}}}; }

Example p1xp1_o11() { return {"P1xP1/O(1,1)", p1xp1(), IntegerMatrix{{1, 0, 1, 0}}}; }

Example p2_bare() { return {"P2", p2(), IntegerMatrix(0, 3)}; }

Example p1_bare() { return {"P1", p1(), IntegerMatrix(0, 2)}; }

Example f3_anticanonical() { return {"F3/-K", hirzebruch(3), IntegerMatrix{{1, 1, 1, 1}}}; }

}  // namespace tglab::corpus
