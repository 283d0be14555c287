/** DOM wiring for the clerk console.
 *
 * Screens: pool list / employee management, availability entry grid,
 * generation launcher, schedule review with code tooltips and the
 * delta panel, what-if editing with live re-verify, report download.
 * Every state change round-trips through the service; the console
 * renders whatever the service answers.
 */

import { ApiClient, ApiError, type JobStatus, type VerificationReport } from "./api.js";
import { describeCodes } from "./codes.js";
import { GridViewModel, parseScheduleGrid } from "./grid.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: Array<Node | string>
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  node.append(...children);
  return node;
}

function errorText(err: unknown): string {
  if (err instanceof ApiError && typeof err.detail === "object") {
    const d = err.detail;
    return [d.code, d.location, d.message].filter(Boolean).join(" — ");
  }
  return err instanceof Error ? err.message : String(err);
}

export class ConsoleApp {
  private currentPool: string | null = null;
  private currentJob: JobStatus | null = null;
  private viewModel: GridViewModel | null = null;

  constructor(
    private readonly api: ApiClient,
    private readonly root: HTMLElement,
  ) {}

  async start(): Promise<void> {
    await this.renderPoolList();
  }

  private setStatus(text: string, cls = "status"): void {
    const bar = this.root.querySelector("#status") ?? this.root.appendChild(el("div", { id: "status" }));
    bar.className = cls;
    bar.textContent = text;
  }

  async renderPoolList(): Promise<void> {
    const pools = await this.api.listPools();
    const list = el("ul", { id: "pools" });
    for (const pool of pools) {
      const open = el("button", {}, `open ${pool.id} (${pool.nurses} nurses)`);
      open.addEventListener("click", () => void this.openPool(pool.id));
      list.append(el("li", {}, open));
    }
    this.root.replaceChildren(el("h1", {}, "Scheduling pools"), list);
  }

  async openPool(poolId: string): Promise<void> {
    this.currentPool = poolId;
    const res = await this.api.getPool(poolId);
    const doc = (res["document"] ?? res) as Record<string, unknown>;
    const availability = doc["availability"] as Record<string, number[][]>;
    const table = el("table", { id: "availability" });
    for (const [nurseId, blocks] of Object.entries(availability)) {
      blocks.forEach((scores, blockIdx) => {
        const row = el("tr", {}, el("th", {}, `${nurseId} b${blockIdx + 1}`));
        scores.forEach((score, shiftIdx) => {
          const picker = el("select", { "data-cell": `${nurseId}:${blockIdx + 1}:${shiftIdx + 1}` });
          for (const value of [0, 1, 2, 3]) {
            const opt = el("option", { value: String(value) }, String(value));
            if (value === score) opt.setAttribute("selected", "");
            picker.append(opt);
          }
          picker.addEventListener("change", () =>
            void this.saveAvailability(nurseId, blockIdx + 1, shiftIdx + 1, Number(picker.value)),
          );
          row.append(el("td", {}, picker));
        });
        table.append(row);
      });
    }
    const launch = el("button", { id: "generate" }, "Generate schedule");
    launch.addEventListener("click", () => void this.launchGeneration());
    this.root.replaceChildren(
      el("h1", {}, `Pool ${poolId}`),
      table,
      el("label", {}, "mode ", el("select", { id: "mode" }, el("option", {}, "approximate"), el("option", {}, "exact"))),
      el("label", {}, " time limit (s) ", el("input", { id: "time-limit", type: "number", value: "60" })),
      launch,
      el("div", { id: "schedule" }),
    );
  }

  private async saveAvailability(nurseId: string, block: number, shift: number, score: number): Promise<void> {
    if (!this.currentPool) return;
    try {
      await this.api.putAvailability(this.currentPool, [
        { nurse_id: nurseId, block, shift, score },
      ]);
      this.setStatus(`saved ${nurseId} shift ${shift} block ${block} → ${score}`);
    } catch (err) {
      this.setStatus(errorText(err), "status error");
    }
  }

  async launchGeneration(): Promise<void> {
    if (!this.currentPool) return;
    const mode = (this.root.querySelector("#mode") as HTMLSelectElement).value as "approximate" | "exact";
    const limit = Number((this.root.querySelector("#time-limit") as HTMLInputElement).value);
    this.setStatus("generating…");
    try {
      const { jobs } = await this.api.generate({
        pool_id: this.currentPool,
        mode,
        time_limit_per_stage: Number.isFinite(limit) ? limit : null,
      });
      const status = await this.api.waitForJob(jobs[0]!);
      this.currentJob = status;
      if (status.state === "timed_out") {
        this.setStatus("no schedule produced (time limit reached)", "status warning");
        return;
      }
      if (status.state !== "done") {
        this.setStatus(`generation ${status.state}: ${status.error ?? ""}`, "status error");
        return;
      }
      const [csv, report] = await Promise.all([
        this.api.jobSchedule(status.id),
        this.api.jobReport(status.id),
      ]);
      this.viewModel = new GridViewModel(parseScheduleGrid(csv), report);
      this.renderSchedule();
    } catch (err) {
      this.setStatus(errorText(err), "status error");
    }
  }

  renderSchedule(): void {
    const vm = this.viewModel;
    if (!vm) return;
    const host = this.root.querySelector("#schedule") ?? this.root.appendChild(el("div", { id: "schedule" }));
    const sections: Node[] = [el("h2", {}, `verdict: ${vm.verdict ?? "unverified (dirty)"}`)];

    vm.grid.blocks.forEach((block, k) => {
      const table = el("table", { class: "grid" });
      table.append(
        el("tr", {}, el("th", {}, `block ${k + 1}`), ...block.shiftLabels.map((s) => el("th", {}, s))),
      );
      block.cells.forEach((row, i) => {
        const tr = el("tr", {}, el("th", {}, vm.grid.nurseIds[i]!));
        row.forEach((cell, j) => {
          const td = el("td", { "data-ref": `${k}:${i}:${j}` }, cell);
          const tips = describeCodes(cell);
          if (cell !== "X" && cell !== "." && tips.length) td.setAttribute("title", tips.join("\n"));
          if (cell !== ".") {
            td.addEventListener("click", () => void this.toggleCell(k, i, j));
          }
          tr.append(td);
        });
        table.append(tr);
      });
      table.append(
        el("tr", {}, el("th", {}, "demand"), ...block.demand.map((d) => el("td", {}, String(d)))),
        el("tr", {}, el("th", {}, "unfilled"), ...block.unfilled.map((s) => el("td", {}, String(s)))),
      );
      sections.push(table);
    });

    const deltas = el("table", { id: "deltas" },
      el("tr", {}, ...["nurse", "block", "assigned", "minimum", "delta"].map((h) => el("th", {}, h))));
    for (const t of vm.grid.totals) {
      deltas.append(el("tr", {},
        el("td", {}, t.nurseId), el("td", {}, String(t.block)), el("td", {}, String(t.assigned)),
        el("td", {}, String(t.minimum)), el("td", {}, String(t.delta))));
    }
    sections.push(el("h2", {}, "Assigned vs minimum"), deltas);

    const download = el("a", { id: "report-download", download: "report.json" }, "Download report");
    download.addEventListener("click", () => {
      const blob = new Blob([JSON.stringify(vm.lastReport, null, 2)], { type: "application/json" });
      (download as HTMLAnchorElement).href = URL.createObjectURL(blob);
    });
    sections.push(download);
    host.replaceChildren(...sections);
  }

  private async toggleCell(block: number, nurse: number, shift: number): Promise<void> {
    const vm = this.viewModel;
    if (!vm || !this.currentPool) return;
    const ref = { block, nurse, shift };
    vm.setAssigned(ref, !vm.isAssigned(ref));
    this.renderSchedule(); // dirty view, verdict cleared
    try {
      const report = await this.api.verify(this.currentPool, vm.toCsv());
      vm.applyVerification(report);
      this.renderSchedule();
      const failures = report.general_rule_failures.map((f) => `${f.rule}: ${f.detail}`);
      this.setStatus(
        report.verdict === "ACCEPTED"
          ? "edit verified: ACCEPTED"
          : `edit rejected — ${failures.join("; ") || "seniority rule violated"}`,
        report.verdict === "ACCEPTED" ? "status" : "status error",
      );
    } catch (err) {
      this.setStatus(errorText(err), "status error");
    }
  }
}

export function mount(baseUrl: string, token: string, root: HTMLElement): ConsoleApp {
  const app = new ConsoleApp(new ApiClient(baseUrl, token), root);
  void app.start();
  return app;
}
