#include "rislink/cli/commands.hpp"

int main(int argc, char** argv) { return rislink::cli::run(argc, argv); }
