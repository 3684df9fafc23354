#pragma once

#include "tglab/toricfan.hpp"

#include <string>

namespace tglab::corpus {

Fan p1();
Fan p2();
// Rays e1, -e1, e2, -e2.
Fan p1xp1();
// Rays (1,0), (0,1), (-1,a), (0,-1).
Fan hirzebruch(long a);

struct Example {
    std::string name;
    Fan fan;
    IntegerMatrix bundles;  // c x m
};

Example p1_o2();
Example p2_o1();
Example p1xp1_o11();
Example p2_bare();
Example p1_bare();
Example f3_anticanonical();

}  // namespace tglab::corpus
