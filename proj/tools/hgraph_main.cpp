#include "hgraph/io.hpp"

int main(int argc, char** argv) { return hgraph::dispatch(argc, argv); }
