/** Interactive pairwise-comparison grid with live consistency feedback.
 *
 * Every accepted edit is pushed to the service, which answers with the
 * post-edit matrix (including the auto-filled reciprocal cell) and the
 * recomputed consistency indices; the grid re-renders both in the same
 * interaction. Edits are applied optimistically and rolled back when the
 * service rejects them, keeping the version counter authoritative.
 */

import type { ApiClient } from "./api.js";
import { SAATY_OPTIONS, nearestOption } from "./saaty.js";
import type { ConsistencyPayload } from "./types.js";

export interface MatrixGridOptions {
  /** Allow arbitrary positive values instead of the discrete selector. */
  freeEntry?: boolean;
  autoReciprocal?: boolean;
}

function deepCopy(matrix: number[][]): number[][] {
  return matrix.map((row) => [...row]);
}

function fmt(x: number): string {
  return Number.isInteger(x) ? String(x) : x.toFixed(4);
}

export class MatrixGridViewModel {
  matrix: number[][];
  consistency: ConsistencyPayload | null = null;
  version: number;
  error: string | null = null;
  readonly freeEntry: boolean;
  readonly autoReciprocal: boolean;
  private container: HTMLElement | null = null;

  constructor(
    private readonly client: ApiClient,
    private readonly sessionId: string,
    readonly expertId: string,
    readonly matrixId: string,
    matrix: number[][],
    readonly labels: string[],
    version = 0,
    options: MatrixGridOptions = {},
  ) {
    if (matrix.length !== labels.length) {
      throw new Error(
        `matrix is ${matrix.length}x${matrix.length} but ${labels.length} labels given`,
      );
    }
    this.matrix = deepCopy(matrix);
    this.version = version;
    this.freeEntry = options.freeEntry ?? false;
    this.autoReciprocal = options.autoReciprocal ?? true;
  }

  get n(): number {
    return this.matrix.length;
  }

  get crAccepted(): boolean | null {
    return this.consistency ? this.consistency.cr_accepted : null;
  }

  /** Push one cell edit; resolves after the grid shows the fresh indices. */
  async setCell(i: number, j: number, value: number): Promise<void> {
    if (i === j) throw new Error("diagonal cells are fixed at 1");
    const snapshot = deepCopy(this.matrix);
    this.error = null;
    this.matrix[i]![j] = value;
    if (this.autoReciprocal) this.matrix[j]![i] = 1 / value;
    this.renderInto();
    try {
      const res = await this.client.putCell(
        this.sessionId,
        this.expertId,
        this.matrixId,
        i,
        j,
        value,
      );
      this.matrix = deepCopy(res.matrix);
      this.version = res.version;
      this.consistency = res.consistency;
    } catch (err) {
      this.matrix = snapshot;
      this.error = err instanceof Error ? err.message : String(err);
    }
    this.renderInto();
  }

  /** Mount the grid; re-used by every subsequent internal re-render. */
  render(container: HTMLElement): void {
    this.container = container;
    this.renderInto();
  }

  private renderInto(): void {
    if (!this.container) return;
    this.container.replaceChildren(
      this.buildBadges(),
      this.buildTable(),
      this.buildIndices(),
      this.buildError(),
    );
  }

  private buildTable(): HTMLTableElement {
    const table = document.createElement("table");
    table.className = "judgment-grid";
    const thead = document.createElement("thead");
    const head = document.createElement("tr");
    head.appendChild(document.createElement("th"));
    for (const label of this.labels) {
      const th = document.createElement("th");
      th.textContent = label;
      head.appendChild(th);
    }
    thead.appendChild(head);
    const tbody = document.createElement("tbody");
    for (let i = 0; i < this.n; i++) {
      const row = document.createElement("tr");
      const th = document.createElement("th");
      th.textContent = this.labels[i] ?? "";
      row.appendChild(th);
      for (let j = 0; j < this.n; j++) {
        const td = document.createElement("td");
        td.appendChild(this.buildCell(i, j));
        row.appendChild(td);
      }
      tbody.appendChild(row);
    }
    table.append(thead, tbody);
    return table;
  }

  private buildCell(i: number, j: number): HTMLElement {
    const value = this.matrix[i]![j]!;
    if (i === j) {
      const span = document.createElement("span");
      span.className = "cell-diagonal";
      span.textContent = "1";
      return span;
    }
    if (this.freeEntry) {
      const input = document.createElement("input");
      input.type = "number";
      input.min = "0";
      input.step = "any";
      input.value = fmt(value);
      input.dataset.cell = `${i},${j}`;
      input.addEventListener("change", () => {
        const v = Number(input.value);
        if (v > 0) void this.setCell(i, j, v);
      });
      return input;
    }
    const select = document.createElement("select");
    select.dataset.cell = `${i},${j}`;
    for (const opt of SAATY_OPTIONS) {
      const option = document.createElement("option");
      option.value = opt.label;
      option.textContent = opt.label;
      select.appendChild(option);
    }
    select.value = nearestOption(value).label;
    select.addEventListener("change", () => {
      const chosen = SAATY_OPTIONS.find((o) => o.label === select.value);
      if (chosen) void this.setCell(i, j, chosen.value);
    });
    return select;
  }

  private buildBadges(): HTMLElement {
    const wrap = document.createElement("div");
    wrap.className = "badges";
    wrap.appendChild(
      this.badge(
        "badge-cr",
        this.consistency === null
          ? ["badge-pending", "CR pending"]
          : this.consistency.cr_accepted
            ? ["badge-ok", "CR ok"]
            : ["badge-reject", "CR too high — revise"],
      ),
    );
    wrap.appendChild(
      this.badge(
        "badge-al",
        this.consistency === null
          ? ["badge-pending", "eigenvalue bound pending"]
          : this.consistency.alonso_lamata_accepted
            ? ["badge-ok", "eigenvalue bound ok"]
            : ["badge-reject", "eigenvalue bound exceeded — revise"],
      ),
    );
    return wrap;
  }

  private badge(id: string, [cls, text]: [string, string] | string[]): HTMLElement {
    const el = document.createElement("span");
    el.className = `badge ${cls}`;
    el.dataset.badge = id;
    el.textContent = text ?? "";
    return el;
  }

  private buildIndices(): HTMLElement {
    const dl = document.createElement("dl");
    dl.className = "indices";
    const c = this.consistency;
    const rows: Array<[string, string]> = c
      ? [
          ["lambda_max", String(c.lambda_max)],
          ["CI", String(c.ci)],
          ["RI", String(c.ri)],
          ["CR", String(c.cr)],
          ["GCI", String(c.gci)],
        ]
      : [];
    for (const [name, value] of rows) {
      const dt = document.createElement("dt");
      dt.textContent = name;
      const dd = document.createElement("dd");
      dd.dataset.index = name;
      dd.textContent = value;
      dl.append(dt, dd);
    }
    return dl;
  }

  private buildError(): HTMLElement {
    const el = document.createElement("p");
    el.className = "grid-error";
    el.dataset.role = "error";
    el.textContent = this.error ?? "";
    if (!this.error) el.hidden = true;
    return el;
  }
}
