using System;
using ShopDemo.Business.Common;
using ShopDemo.Data;

namespace ShopDemo.Business.Reports
{
    public class ReportService
    {
        private ReportRepository reports;
        private AuditTrail audit;

        public string BuildSummary()
        {
            audit.Record("summary start");
            int orders = reports.TallyOrders();
            int users = reports.TallyUsers();
            var builder = new ReportBuilder();
            builder.AddHeader("summary").AddTotals(orders, users).Render();
            audit.Log("report built").Flush();
            return "done";
        }
    }
}
