import json
import sqlite3
from datetime import datetime

import pandas as pd

from . import config

HISTORY_COLUMNS = ['ID', 'Created', 'Command', 'Ring', 'n', 'Pattern', 'Length', 'OK']


def _connect(db_path=None):
    return sqlite3.connect(db_path or config.DB_PATH)


def init_db(db_path=None):
    conn = _connect(db_path)
    c = conn.cursor()

    # Factorisation history
    c.execute('''
        CREATE TABLE IF NOT EXISTS factorisations (
            id INTEGER PRIMARY KEY AUTOINCREMENT,
            created_at TEXT NOT NULL,
            command TEXT NOT NULL,
            ring TEXT NOT NULL,
            n INTEGER NOT NULL,
            pattern TEXT NOT NULL,
            length INTEGER NOT NULL,
            ok INTEGER NOT NULL,
            input_json TEXT NOT NULL,
            output_json TEXT NOT NULL
        )
    ''')

    # Selftest runs and their individual checks
    c.execute('''
        CREATE TABLE IF NOT EXISTS selftest_runs (
            id INTEGER PRIMARY KEY AUTOINCREMENT,
            created_at TEXT NOT NULL,
            passed INTEGER NOT NULL,
            failed INTEGER NOT NULL
        )
    ''')

    c.execute('''
        CREATE TABLE IF NOT EXISTS selftest_checks (
            id INTEGER PRIMARY KEY AUTOINCREMENT,
            run_id INTEGER NOT NULL,
            name TEXT NOT NULL,
            ok INTEGER NOT NULL,
            detail TEXT,
            FOREIGN KEY (run_id) REFERENCES selftest_runs (id)
        )
    ''')

    conn.commit()
    conn.close()


def record_factorisation(command, ring, n, pattern, length, ok, input_data, output_data, db_path=None):
    conn = _connect(db_path)
    c = conn.cursor()
    c.execute("""INSERT INTO factorisations (created_at, command, ring, n, pattern, length, ok,
                 input_json, output_json)
                 VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?)""",
              (datetime.now().isoformat(timespec='seconds'), command, ring, n, pattern, length,
               1 if ok else 0, json.dumps(input_data), json.dumps(output_data)))
    row_id = c.lastrowid
    conn.commit()
    conn.close()
    return row_id


def get_history(limit=50, command=None, db_path=None):
    conn = _connect(db_path)
    c = conn.cursor()
    if command:
        c.execute("""SELECT id, created_at, command, ring, n, pattern, length, ok
                     FROM factorisations WHERE command = ? ORDER BY id DESC LIMIT ?""",
                  (command, limit))
    else:
        c.execute("""SELECT id, created_at, command, ring, n, pattern, length, ok
                     FROM factorisations ORDER BY id DESC LIMIT ?""", (limit,))
    rows = c.fetchall()
    conn.close()
    return rows


def get_history_frame(limit=50, command=None, db_path=None):
    rows = get_history(limit, command, db_path)
    df = pd.DataFrame(rows, columns=HISTORY_COLUMNS)
    df['OK'] = df['OK'].astype(bool)
    return df


def get_factorisation(row_id, db_path=None):
    conn = _connect(db_path)
    c = conn.cursor()
    c.execute("SELECT input_json, output_json FROM factorisations WHERE id = ?", (row_id,))
    row = c.fetchone()
    conn.close()
    if row is None:
        return None
    return {'input': json.loads(row[0]), 'output': json.loads(row[1])}


def get_statistics(db_path=None):
    conn = _connect(db_path)
    c = conn.cursor()

    # Totals
    c.execute("SELECT COUNT(*) FROM factorisations")
    total = c.fetchone()[0]

    c.execute("SELECT command, COUNT(*) FROM factorisations GROUP BY command")
    per_command = dict(c.fetchall())

    c.execute("SELECT pattern, COUNT(*) FROM factorisations GROUP BY pattern")
    per_pattern = dict(c.fetchall())

    c.execute("SELECT COUNT(*) FROM factorisations WHERE ok = 0")
    failures = c.fetchone()[0]

    conn.close()
    return {
        'total': total,
        'per_command': per_command,
        'per_pattern': per_pattern,
        'failures': failures,
    }


def record_selftest(results, db_path=None):
    passed = sum(1 for r in results if r.ok)
    conn = _connect(db_path)
    c = conn.cursor()
    c.execute("INSERT INTO selftest_runs (created_at, passed, failed) VALUES (?, ?, ?)",
              (datetime.now().isoformat(timespec='seconds'), passed, len(results) - passed))
    run_id = c.lastrowid
    for r in results:
        c.execute("INSERT INTO selftest_checks (run_id, name, ok, detail) VALUES (?, ?, ?, ?)",
                  (run_id, r.name, 1 if r.ok else 0, r.detail))
    conn.commit()
    conn.close()
    return run_id


def get_selftest_runs(limit=20, db_path=None):
    conn = _connect(db_path)
    c = conn.cursor()
    c.execute("SELECT id, created_at, passed, failed FROM selftest_runs ORDER BY id DESC LIMIT ?",
              (limit,))
    runs = c.fetchall()
    conn.close()
    return runs


def get_selftest_checks(run_id, db_path=None):
    conn = _connect(db_path)
    c = conn.cursor()
    c.execute("SELECT name, ok, detail FROM selftest_checks WHERE run_id = ? ORDER BY id",
              (run_id,))
    checks = c.fetchall()
    conn.close()
    return checks
