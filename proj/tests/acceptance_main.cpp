#include "ccsg/verify.hpp"
#include <iostream>
int main() { return ccsg::run_acceptance(std::cout) ? 0 : 1; }
