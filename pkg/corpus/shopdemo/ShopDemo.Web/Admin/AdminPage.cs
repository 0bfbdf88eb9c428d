using System;
using ShopDemo.Business.Reports;
using ShopDemo.Web.Common;

namespace ShopDemo.Web.Admin
{
    public class AdminPage : PageBase
    {
        private ReportService reports;

        public void RunReport()
        {
            string summary = reports.BuildSummary();
            this.Trace(summary);
        }
    }
}
