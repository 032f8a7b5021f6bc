#include "cli.hpp"

int main(int argc, char** argv) {
    return ltswave::cli::main_entry(argc, argv);
}
