// Catch2 v3 amalgamated implementation; ships its own main().
#include <catch2/catch_amalgamated.cpp>
