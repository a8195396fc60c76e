// SPDX-License-Identifier: Apache-2.0
#include "blr/cli.hpp"

int main(int argc, char** argv) { return blr::cli::main_impl(argc, argv); }
