"""
Create (or upgrade in place) the factorisation history database.
Safe to run more than once.
"""

import sqlite3

from unitri import config
from unitri.database import init_db

TABLES = ['factorisations', 'selftest_runs', 'selftest_checks']


def init_history_db(db_path=None):
    db_path = db_path or config.DB_PATH
    print(f"Initialising history database at {db_path}...")
    init_db(db_path)

    conn = sqlite3.connect(db_path)
    c = conn.cursor()
    for table in TABLES:
        c.execute("SELECT name FROM sqlite_master WHERE type='table' AND name=?", (table,))
        if not c.fetchone():
            print(f"❌ {table} table is missing")
            conn.close()
            return False
        c.execute(f"SELECT COUNT(*) FROM {table}")
        print(f"✓ {table:18} {c.fetchone()[0]} rows")
    conn.close()

    print("\nDatabase ready.")
    return True


if __name__ == "__main__":
    init_history_db()
