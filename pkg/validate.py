#!/usr/bin/env python3
"""
Validation script for the SS-SIM-OFDM link simulator
Checks the environment and a handful of closed-form anchors before long sweeps
"""

import sys
from pathlib import Path


def print_header(text):
    """Print a formatted header"""
    print("\n" + "=" * 60)
    print(f"  {text}")
    print("=" * 60)


def print_status(check, status, message=""):
    """Print a status line"""
    symbol = "✅" if status else "❌"
    print(f"{symbol} {check}: {'PASS' if status else 'FAIL'} {message}")
    return status


def check_python_version():
    """Check if Python version is 3.9 or higher"""
    version = sys.version_info
    is_valid = version >= (3, 9)
    print_status(
        "Python version",
        is_valid,
        f"(found {version.major}.{version.minor}.{version.micro})"
    )
    return is_valid


def check_file_exists(filepath, description):
    exists = Path(filepath).exists()
    print_status(description, exists, f"({filepath})")
    return exists


def check_directory_exists(dirpath, description):
    exists = Path(dirpath).is_dir()
    print_status(description, exists, f"({dirpath})")
    return exists


def check_dependencies():
    """Check if key dependencies can be imported"""
    print_header("Checking Dependencies")

    required_packages = [
        ('numpy', 'numpy'),
        ('pandas', 'pandas'),
        ('scipy', 'scipy'),
        ('yaml', 'PyYAML'),
        ('dotenv', 'python-dotenv'),
        ('pytest', 'pytest'),
        ('hypothesis', 'hypothesis'),
    ]

    all_ok = True
    for package, package_name in required_packages:
        try:
            __import__(package)
            print_status(f"{package_name}", True)
        except ImportError:
            print_status(f"{package_name}", False, "NOT INSTALLED")
            all_ok = False

    return all_ok


def check_structure():
    """Check if project structure is correct"""
    print_header("Checking Project Structure")

    all_ok = True
    for dir_path in ['src', 'src/system', 'src/mappers', 'src/waveform', 'src/detectors',
                     'src/analysis', 'src/simulation', 'src/cli', 'src/utils', 'config', 'tests']:
        all_ok &= check_directory_exists(dir_path, f"Directory: {dir_path}")

    for file_path in ['requirements.txt', 'README.md', 'DESIGN.md', 'pytest.ini',
                      'config/app_config.yaml', 'config/system_config.yaml',
                      'config/experiments_config.yaml']:
        all_ok &= check_file_exists(file_path, f"File: {file_path}")

    return all_ok


def check_anchors():
    """Reproduce values that are known in closed form"""
    print_header("Checking Reference Values")

    try:
        from src.analysis import diversity_census, flops
        from src.mappers import CombinatorialMapper, OsiMapper, family_metrics
        from src.simulation import build_link
        from src.system.system_config import SystemConfig
    except ImportError as e:
        print_status("Import simulator", False, str(e))
        return False

    all_ok = True

    config = SystemConfig(5, 4, 64)
    for kind, expected in (('ml', 15564.8), ('near-ml', 406.4), ('llr-mrc', 101.4)):
        value = flops(kind, config)
        all_ok &= print_status(f"{kind} flops (5,4,64)", abs(value - expected) < 1e-6, f"({value:.1f})")

    kg = family_metrics(OsiMapper(4, 2, 2).build())
    all_ok &= print_status("OSI (4,2) kappa/Gamma", kg == (2, 24), f"({kg})")
    kg = family_metrics(CombinatorialMapper(4, 2, 2).build())
    all_ok &= print_status("Combinatorial (4,2) kappa/Gamma", kg == (1, 16), f"({kg})")

    for n, k, expected in ((3, 2, 8), (4, 2, 20), (5, 4, 12), (5, 3, 26)):
        report = diversity_census(build_link(SystemConfig(n, k, 2)).modem)
        ok = report.g_d == 2 and report.n_d == expected
        all_ok &= print_status(f"Combinatorial ({n},{k},2) G_d/N_d", ok, f"({report.g_d}, {report.n_d})")

    report = diversity_census(build_link(SystemConfig(5, 4, 2, mapper_kind='osi')).modem)
    all_ok &= print_status("OSI (5,4,2) G_d", report.g_d == 4, f"({report.g_d})")

    return all_ok


def main():
    """Run all validation checks"""
    print_header("📡 SS-SIM-OFDM Simulator Validation")
    print("This script validates your setup before running sweeps")

    results = []
    results.append(("Python Version", check_python_version()))
    results.append(("Project Structure", check_structure()))

    print("\n💡 If dependencies check fails, run: pip install -r requirements.txt")
    results.append(("Dependencies", check_dependencies()))
    results.append(("Reference Values", check_anchors()))

    print_header("Summary")

    passed = sum(1 for _, status in results if status)
    total = len(results)

    print(f"\nPassed: {passed}/{total} checks")

    if passed == total:
        print("\n✨ All checks passed!")
        print("\n📚 Next steps:")
        print("   1. pytest                       (unit tests)")
        print("   2. ./start.sh                   (default BER sweep)")
        print("   3. python -m src.cli.main experiment --list")
        return 0
    else:
        print("\n⚠️  Some checks failed. Please address the issues above.")
        print("\n📚 Resources:")
        print("   - README.md for setup instructions")
        print("   - DESIGN.md for module layout")
        return 1


if __name__ == "__main__":
    sys.exit(main())
