// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 procurate contributors

#include "procurate/cli.hpp"

int main(int argc, char** argv) { return procurate::cli::run(argc, argv); }
